/** Per-question countdown. The display value never goes below zero. */
export class Countdown {
  private startedAt: number | null = null;
  private expiredReported = false;

  constructor(
    public readonly limitSeconds: number,
    private readonly now: () => number = () => Date.now(),
  ) {}

  start(): void {
    this.startedAt = this.now();
    this.expiredReported = false;
  }

  get running(): boolean {
    return this.startedAt !== null;
  }

  /** Client-measured seconds since start; what answer submissions carry. */
  elapsedSeconds(): number {
    if (this.startedAt === null) return 0;
    return (this.now() - this.startedAt) / 1000;
  }

  /** Whole seconds left for display, clamped at zero. */
  remainingSeconds(): number {
    const remaining = this.limitSeconds - this.elapsedSeconds();
    return Math.max(0, Math.ceil(remaining));
  }

  isExpired(): boolean {
    return this.startedAt !== null && this.elapsedSeconds() > this.limitSeconds;
  }

  /** True exactly once, the first poll after expiry. */
  pollExpiry(): boolean {
    if (this.isExpired() && !this.expiredReported) {
      this.expiredReported = true;
      return true;
    }
    return false;
  }

  stop(): void {
    this.startedAt = null;
  }
}
