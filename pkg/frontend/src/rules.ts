/** Client-side mirror of the server's move legality rule: a move picks a
 * window of k consecutive stacks (wrapping) and removes between zero and
 * the stack height from each, at least one token in total.  The guard
 * here must agree with the server verdict; the integration test replays
 * random submissions against a live service to check exactly that. */

export function windowStacks(n: number, k: number, start: number): number[] {
    const out: number[] = [];
    for (let j = 0; j < k; j++) {
        out.push((start - 1 + j) % n);
    }
    return out;
}

export function isLegalMove(
    position: number[],
    k: number,
    start: number,
    removals: number[],
): boolean {
    const n = position.length;
    if (!Number.isInteger(start) || start < 1 || start > n) return false;
    if (removals.length !== k) return false;
    let total = 0;
    const stacks = windowStacks(n, k, start);
    for (let j = 0; j < k; j++) {
        const r = removals[j];
        if (!Number.isInteger(r) || r < 0) return false;
        if (r > position[stacks[j]]) return false;
        total += r;
    }
    return total >= 1;
}

export function applyMove(
    position: number[],
    k: number,
    start: number,
    removals: number[],
): number[] {
    const next = position.slice();
    const stacks = windowStacks(position.length, k, start);
    for (let j = 0; j < k; j++) {
        next[stacks[j]] -= removals[j];
    }
    return next;
}

export function isFinished(position: number[]): boolean {
    return position.every((h) => h === 0);
}
