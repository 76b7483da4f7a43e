import { describe, expect, it, vi } from 'vitest';

import { debounce } from '../src/debounce.js';

describe('debounce', () => {
  it('collapses a burst into the trailing call', () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const fn = debounce((v: number) => calls.push(v), 200);
    fn(1);
    fn(2);
    fn(3);
    vi.advanceTimersByTime(199);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual([3]);
    vi.useRealTimers();
  });

  it('fires again for a second burst', () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const fn = debounce((v: number) => calls.push(v), 100);
    fn(1);
    vi.advanceTimersByTime(100);
    fn(2);
    vi.advanceTimersByTime(100);
    expect(calls).toEqual([1, 2]);
    vi.useRealTimers();
  });

  it('cancel drops the pending call', () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const fn = debounce((v: number) => calls.push(v), 100);
    fn(1);
    fn.cancel();
    vi.advanceTimersByTime(500);
    expect(calls).toEqual([]);
    vi.useRealTimers();
  });

  it('flush runs the pending call immediately', () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const fn = debounce((v: number) => calls.push(v), 100);
    fn(7);
    fn.flush();
    expect(calls).toEqual([7]);
    vi.advanceTimersByTime(500);
    expect(calls).toEqual([7]);
    vi.useRealTimers();
  });
});
