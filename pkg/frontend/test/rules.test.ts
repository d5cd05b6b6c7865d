import { describe, expect, it } from "vitest";

import { applyMove, isFinished, isLegalMove, windowStacks } from "../src/rules.js";

describe("windowStacks", () => {
    it("wraps around the circle", () => {
        expect(windowStacks(4, 2, 4)).toEqual([3, 0]);
        expect(windowStacks(8, 6, 5)).toEqual([4, 5, 6, 7, 0, 1]);
    });
});

describe("isLegalMove", () => {
    const pos = [3, 5, 4, 2];

    it("accepts the documented example", () => {
        expect(isLegalMove(pos, 2, 2, [3, 1])).toBe(true);
        expect(applyMove(pos, 2, 2, [3, 1])).toEqual([3, 2, 3, 2]);
    });

    it("rejects zero-total removals", () => {
        expect(isLegalMove(pos, 2, 1, [0, 0])).toBe(false);
    });

    it("rejects overdraw", () => {
        expect(isLegalMove(pos, 2, 1, [4, 0])).toBe(false);
    });

    it("rejects bad window starts", () => {
        expect(isLegalMove(pos, 2, 0, [1, 0])).toBe(false);
        expect(isLegalMove(pos, 2, 5, [1, 0])).toBe(false);
    });

    it("rejects wrong removal width", () => {
        expect(isLegalMove(pos, 2, 1, [1])).toBe(false);
        expect(isLegalMove(pos, 2, 1, [1, 0, 0])).toBe(false);
    });

    it("rejects negatives and fractions", () => {
        expect(isLegalMove(pos, 2, 1, [-1, 2])).toBe(false);
        expect(isLegalMove(pos, 2, 1, [0.5, 1])).toBe(false);
    });

    it("accepts wrap-around removals", () => {
        expect(isLegalMove(pos, 2, 4, [2, 3])).toBe(true);
        expect(applyMove(pos, 2, 4, [2, 3])).toEqual([0, 5, 4, 0]);
    });
});

describe("isFinished", () => {
    it("is true exactly on the empty board", () => {
        expect(isFinished([0, 0, 0])).toBe(true);
        expect(isFinished([0, 1, 0])).toBe(false);
    });
});
