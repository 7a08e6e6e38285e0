// Wire types for the judge service read endpoints. Field names mirror the
// JSON bodies exactly; see the shared fixtures under fixtures/ for samples.

export interface ScoreBreakdown {
  value: number;
  tdr: number;
  dcd: number;
  pb_re: number;
  sv_re: number;
}

export interface TieBreak {
  technical_debt_ratio: number;
  smell_severity: number;
  duplicated_lines_density: number;
  bugs: number;
  vulnerabilities: number;
  cyclomatic_complexity: number;
  cognitive_complexity: number;
  comment_density: number;
  submitted_at: string;
}

export interface BestSubmission {
  submission_id: number;
  analysis_id: string;
  analysed_at: string;
  received_at: string;
  gate_status: string;
}

export interface LeaderboardEntry {
  rank: number;
  team: string;
  qualified: boolean;
  submissions_count: number;
  last_received_at: string;
  score: ScoreBreakdown;
  tiebreak: TieBreak;
  best: BestSubmission;
}

export interface LeaderboardPayload {
  schema_version: number;
  as_of: string | null;
  entries: LeaderboardEntry[];
}

export interface SubmissionDetail {
  submission_id: number;
  team: string;
  project_key: string;
  analysis_id: string;
  analysed_at: string;
  received_at: string;
  gate_status: string;
  score: ScoreBreakdown;
  derived: Record<string, number>;
}

export interface SubmissionsPayload {
  schema_version: number;
  count: number;
  submissions: SubmissionDetail[];
}

export interface HistoryPoint {
  date: string;
  rank: number;
}

export interface HistoryPayload {
  schema_version: number;
  team: string;
  series: HistoryPoint[];
}
