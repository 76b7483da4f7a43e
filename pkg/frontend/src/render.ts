// Latest-wins fetch channel: at most one render result is delivered per
// burst of requests, and stale responses are dropped.

export class RenderChannel {
  private seq = 0;

  /** Run a fetch; resolve with its result only if no newer request started. */
  async latest<T>(fn: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.seq;
    const result = await fn();
    return ticket === this.seq ? result : null;
  }
}
