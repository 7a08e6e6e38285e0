// Pure HTML/SVG string builders. No DOM access here: everything returns a
// string, which keeps the views testable in plain node and makes XSS
// handling a single escape function.

import { formatCount, formatDay, formatNumber, formatScore, formatTimestamp } from "./format.js";
import type {
  HistoryPayload,
  LeaderboardEntry,
  LeaderboardPayload,
  SubmissionDetail,
} from "./types.js";
import type { PollState } from "./poll.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

// A formatted cell keeps the exact value in the tooltip.
function cell(raw: number | string, shown: string, cssClass = "num"): string {
  return `<td class="${cssClass}" title="${escapeHtml(String(raw))}">${escapeHtml(shown)}</td>`;
}

const HEADERS = [
  "Rank",
  "Team",
  "Score",
  "Debt ratio %",
  "Smell severity",
  "Duplication %",
  "Bugs",
  "Vulnerabilities",
  "Cyclomatic",
  "Cognitive",
  "Comments %",
  "Last submission",
];

function leaderboardRow(entry: LeaderboardEntry): string {
  const tb = entry.tiebreak;
  const badge = entry.qualified ? "" : ' <span class="badge unqualified-badge">not qualified</span>';
  const cells = [
    `<td class="num">${entry.rank}</td>`,
    `<td class="team">${escapeHtml(entry.team)}${badge}</td>`,
    cell(entry.score.value, formatScore(entry.score.value), "num score"),
    cell(tb.technical_debt_ratio, formatNumber(tb.technical_debt_ratio)),
    cell(tb.smell_severity, formatNumber(tb.smell_severity)),
    cell(tb.duplicated_lines_density, formatNumber(tb.duplicated_lines_density)),
    cell(tb.bugs, formatCount(tb.bugs)),
    cell(tb.vulnerabilities, formatCount(tb.vulnerabilities)),
    cell(tb.cyclomatic_complexity, formatCount(tb.cyclomatic_complexity)),
    cell(tb.cognitive_complexity, formatCount(tb.cognitive_complexity)),
    cell(tb.comment_density, formatNumber(tb.comment_density)),
    cell(entry.last_received_at, formatTimestamp(entry.last_received_at), "time"),
  ];
  const rowClass = entry.qualified ? "row" : "row unqualified";
  return `<tr class="${rowClass}" data-team="${escapeHtml(entry.team)}">${cells.join("")}</tr>`;
}

// Rows render in payload order: ranking is the service's job and the
// client never re-sorts.
export function renderLeaderboard(payload: LeaderboardPayload): string {
  if (payload.entries.length === 0) {
    return '<p class="empty-state">No submissions yet</p>';
  }
  const asOf = payload.as_of
    ? `as of ${escapeHtml(formatTimestamp(payload.as_of))}`
    : "live";
  const head = HEADERS.map((h) => `<th>${h}</th>`).join("");
  const body = payload.entries.map(leaderboardRow).join("\n");
  return [
    `<p class="as-of">${asOf}</p>`,
    '<table class="leaderboard">',
    `<thead><tr>${head}</tr></thead>`,
    `<tbody>\n${body}\n</tbody>`,
    "</table>",
  ].join("\n");
}

const SCORE_PARTS: ReadonlyArray<[keyof SubmissionDetail["score"], string]> = [
  ["value", "Total score"],
  ["tdr", "Technical debt ratio"],
  ["dcd", "Duplicated lines density"],
  ["pb_re", "Reliability remediation rate"],
  ["sv_re", "Security remediation rate"],
];

export function renderSubmission(detail: SubmissionDetail): string {
  const rows = SCORE_PARTS.map(([key, label]) => {
    const raw = detail.score[key];
    return `<tr><th>${label}</th>${cell(raw, formatScore(raw))}</tr>`;
  }).join("\n");
  const derived = Object.entries(detail.derived)
    .map(([name, value]) => `<tr><th>${escapeHtml(name)}</th>${cell(value, formatNumber(value, 4))}</tr>`)
    .join("\n");
  return [
    '<section class="submission-detail">',
    `<h2>${escapeHtml(detail.team)} / ${escapeHtml(detail.analysis_id)}</h2>`,
    `<p>project ${escapeHtml(detail.project_key)}, gate <span class="gate gate-${escapeHtml(detail.gate_status)}">${escapeHtml(detail.gate_status)}</span>,`,
    ` received ${escapeHtml(formatTimestamp(detail.received_at))}</p>`,
    `<table class="score-breakdown"><tbody>\n${rows}\n</tbody></table>`,
    `<table class="derived-metrics"><tbody>\n${derived}\n</tbody></table>`,
    "</section>",
  ].join("\n");
}

const CHART = {
  width: 640,
  height: 240,
  padX: 48,
  padY: 24,
};

// Rank-over-time line chart. The y axis is inverted on purpose: rank 1 is
// the best, so it sits at the top of the chart.
export function renderHistory(payload: HistoryPayload): string {
  if (payload.series.length === 0) {
    return '<p class="empty-state">No history yet</p>';
  }
  const { width, height, padX, padY } = CHART;
  const innerW = width - 2 * padX;
  const innerH = height - 2 * padY;
  const maxRank = Math.max(2, ...payload.series.map((p) => p.rank));
  const xAt = (i: number): number =>
    payload.series.length === 1 ? padX + innerW / 2 : padX + (i * innerW) / (payload.series.length - 1);
  const yAt = (rank: number): number => padY + ((rank - 1) * innerH) / (maxRank - 1);

  const points = payload.series
    .map((p, i) => `${xAt(i).toFixed(1)},${yAt(p.rank).toFixed(1)}`)
    .join(" ");
  const dots = payload.series
    .map((p, i) => {
      const x = xAt(i).toFixed(1);
      const y = yAt(p.rank).toFixed(1);
      return `<circle cx="${x}" cy="${y}" r="4" data-date="${escapeHtml(p.date)}" data-rank="${p.rank}"><title>${escapeHtml(p.date)}: rank ${p.rank}</title></circle>`;
    })
    .join("\n");
  const xLabels = payload.series
    .map((p, i) => `<text x="${xAt(i).toFixed(1)}" y="${height - 4}" text-anchor="middle" class="tick">${escapeHtml(formatDay(p.date))}</text>`)
    .join("\n");
  const yLabels = Array.from({ length: maxRank }, (_, i) => i + 1)
    .map((rank) => `<text x="${padX - 10}" y="${(yAt(rank) + 4).toFixed(1)}" text-anchor="end" class="tick">${rank}</text>`)
    .join("\n");

  return [
    `<svg class="history-chart" viewBox="0 0 ${width} ${height}" role="img" aria-label="rank history for ${escapeHtml(payload.team)}">`,
    yLabels,
    xLabels,
    `<polyline fill="none" points="${points}"/>`,
    dots,
    "</svg>",
  ].join("\n");
}

export function renderStatus(state: PollState): string {
  if (state.status === "ok") {
    return '<span class="status status-ok">live</span>';
  }
  if (state.status === "stale") {
    return `<span class="status status-stale">showing stale data (${state.consecutiveFailures} failed refreshes)</span>`;
  }
  const detail = state.lastError ? `: ${escapeHtml(state.lastError)}` : "";
  return `<span class="status status-error">refresh failed${detail}, retrying</span>`;
}
