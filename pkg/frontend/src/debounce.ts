// Trailing-edge debounce: collapses a burst of calls into the last one.

export interface Debounced<Args extends unknown[]> {
  (...args: Args): void;
  cancel(): void;
  flush(): void;
}

export function debounce<Args extends unknown[]>(
  fn: (...args: Args) => void,
  ms: number,
): Debounced<Args> {
  let timer: ReturnType<typeof setTimeout> | undefined;
  let pending: Args | undefined;

  const wrapped = (...args: Args) => {
    pending = args;
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      const args2 = pending!;
      pending = undefined;
      fn(...args2);
    }, ms);
  };
  wrapped.cancel = () => {
    if (timer !== undefined) clearTimeout(timer);
    timer = undefined;
    pending = undefined;
  };
  wrapped.flush = () => {
    if (timer === undefined || pending === undefined) return;
    clearTimeout(timer);
    timer = undefined;
    const args = pending;
    pending = undefined;
    fn(...args);
  };
  return wrapped;
}
