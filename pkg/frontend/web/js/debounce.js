// Trailing-edge debounce: collapses a burst of calls into the last one.
export function debounce(fn, ms) {
    let timer;
    let pending;
    const wrapped = (...args) => {
        pending = args;
        if (timer !== undefined)
            clearTimeout(timer);
        timer = setTimeout(() => {
            timer = undefined;
            const args2 = pending;
            pending = undefined;
            fn(...args2);
        }, ms);
    };
    wrapped.cancel = () => {
        if (timer !== undefined)
            clearTimeout(timer);
        timer = undefined;
        pending = undefined;
    };
    wrapped.flush = () => {
        if (timer === undefined || pending === undefined)
            return;
        clearTimeout(timer);
        timer = undefined;
        const args = pending;
        pending = undefined;
        fn(...args);
    };
    return wrapped;
}
