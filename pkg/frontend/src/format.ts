// Display-only formatting. Raw values always stay available in tooltips,
// so rounding here never feeds back into any comparison.

export function formatNumber(value: number, decimals = 2): string {
  if (!Number.isFinite(value)) {
    return String(value);
  }
  return value.toFixed(decimals);
}

export function formatScore(value: number): string {
  return formatNumber(value, 4);
}

export function formatCount(value: number): string {
  return String(value);
}

// Service timestamps are ISO 8601 in UTC, e.g. "2026-03-01T10:00:00+00:00".
export function formatTimestamp(iso: string): string {
  const parsed = new Date(iso);
  if (Number.isNaN(parsed.getTime())) {
    return iso;
  }
  return parsed.toISOString().slice(0, 16).replace("T", " ") + " UTC";
}

// "2026-03-01" -> "03-01" for compact chart tick labels.
export function formatDay(isoDate: string): string {
  return isoDate.length === 10 ? isoDate.slice(5) : isoDate;
}
