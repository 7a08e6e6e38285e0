// Polling loop with error backoff. The fetch function and the timer are
// injected so tests can drive the loop deterministically.

export type FetchJson = (url: string) => Promise<unknown>;
export type Schedule = (fn: () => void, delayMs: number) => void;

export const STALE_AFTER = 3;
export const DEFAULT_INTERVAL_MS = 10_000;
export const DEFAULT_MAX_BACKOFF_MS = 60_000;

export interface PollState {
  status: "ok" | "error" | "stale";
  consecutiveFailures: number;
  lastError: string | null;
}

export interface PollerOptions {
  url: string;
  fetchJson: FetchJson;
  onData: (payload: unknown) => void;
  onState: (state: PollState) => void;
  schedule: Schedule;
  intervalMs?: number;
  maxBackoffMs?: number;
}

export class Poller {
  private readonly intervalMs: number;
  private readonly maxBackoffMs: number;
  private failures = 0;
  private inFlight = false;
  private stopped = false;

  constructor(private readonly opts: PollerOptions) {
    this.intervalMs = opts.intervalMs ?? DEFAULT_INTERVAL_MS;
    this.maxBackoffMs = opts.maxBackoffMs ?? DEFAULT_MAX_BACKOFF_MS;
  }

  start(): void {
    this.stopped = false;
    void this.tick();
  }

  stop(): void {
    this.stopped = true;
  }

  // Doubles per consecutive failure, capped; back to the base interval on
  // the first success.
  nextDelayMs(): number {
    if (this.failures === 0) {
      return this.intervalMs;
    }
    return Math.min(this.intervalMs * 2 ** this.failures, this.maxBackoffMs);
  }

  state(): PollState {
    if (this.failures === 0) {
      return { status: "ok", consecutiveFailures: 0, lastError: null };
    }
    return {
      status: this.failures >= STALE_AFTER ? "stale" : "error",
      consecutiveFailures: this.failures,
      lastError: this.lastError,
    };
  }

  private lastError: string | null = null;

  // At most one request in flight: a tick that lands mid-request is a
  // no-op rather than a second fetch.
  async tick(): Promise<void> {
    if (this.inFlight || this.stopped) {
      return;
    }
    this.inFlight = true;
    try {
      const payload = await this.opts.fetchJson(this.opts.url);
      this.failures = 0;
      this.lastError = null;
      this.opts.onData(payload);
    } catch (err) {
      this.failures += 1;
      this.lastError = err instanceof Error ? err.message : String(err);
    } finally {
      this.inFlight = false;
      this.opts.onState(this.state());
      if (!this.stopped) {
        this.opts.schedule(() => void this.tick(), this.nextDelayMs());
      }
    }
  }
}
