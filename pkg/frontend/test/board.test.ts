import { describe, expect, it } from "vitest";

import { renderBoard, stackCenter } from "../src/board.js";
import { BoardView, GameState, emptyView } from "../src/types.js";

function viewWith(overrides: Partial<BoardView>): BoardView {
    const state: GameState = {
        id: "abc",
        n: 4,
        k: 2,
        position: [3, 5, 4, 2],
        to_move: "HUMAN",
        status: "ONGOING",
        engine_mode: "THEOREM",
    };
    return { ...emptyView(), state, banner: "Your move.", ...overrides };
}

describe("stackCenter", () => {
    it("puts stack 1 at 12 o'clock and runs clockwise", () => {
        const n = 8;
        const first = stackCenter(n, 0);
        expect(first.y).toBeLessThan(stackCenter(n, 4).y); // opposite stack below
        expect(Math.abs(first.x - stackCenter(n, 4).x)).toBeLessThan(1e-9);
        const second = stackCenter(n, 1);
        expect(second.x).toBeGreaterThan(first.x); // clockwise = to the right first
    });
});

describe("renderBoard", () => {
    it("is a pure function of the view", () => {
        const a = renderBoard(viewWith({}));
        const b = renderBoard(viewWith({}));
        expect(a).toBe(b);
        const c = renderBoard(viewWith({ selectedStart: 2, pendingRemovals: [0, 0] }));
        expect(c).not.toBe(a);
    });

    it("labels every stack with its height", () => {
        const html = renderBoard(viewWith({}));
        for (const height of [3, 5, 4, 2]) {
            expect(html).toContain(`>${height}</text>`);
        }
    });

    it("highlights the selected window of k stacks", () => {
        const html = renderBoard(viewWith({ selectedStart: 4, pendingRemovals: [0, 0] }));
        const covered = html.match(/class="stack covered/g) ?? [];
        expect(covered.length + (html.includes("covered origin") ? 0 : 0)).toBeGreaterThan(0);
        // window start 4 wraps to stacks 4 and 1
        expect(html).toMatch(/stack covered origin" data-stack="4"/);
        expect(html).toMatch(/stack covered" data-stack="1"/);
    });

    it("disables submit for zero-total pending removals", () => {
        const html = renderBoard(viewWith({ selectedStart: 1, pendingRemovals: [0, 0] }));
        expect(html).toMatch(/data-action="submit" disabled/);
    });

    it("enables submit for a legal pending move", () => {
        const html = renderBoard(viewWith({ selectedStart: 1, pendingRemovals: [1, 0] }));
        expect(html).toMatch(/data-action="submit" >/);
    });

    it("bounds steppers by the stack heights", () => {
        const html = renderBoard(viewWith({ selectedStart: 2, pendingRemovals: [5, 0] }));
        // stack 2 holds 5 tokens: the increment button is disabled at 5
        expect(html).toMatch(/data-action="inc" data-slot="0" disabled/);
        expect(html).toContain("/5<");
    });

    it("shows the losing hint colouring only when enabled", () => {
        const plain = renderBoard(viewWith({ hintLosing: true }));
        expect(plain).toContain(`class="board"`);
        const hinted = renderBoard(viewWith({ hintEnabled: true, hintLosing: true }));
        expect(hinted).toContain(`class="board losing"`);
    });

    it("keeps the inline error and the pending input visible together", () => {
        const html = renderBoard(
            viewWith({
                selectedStart: 1,
                pendingRemovals: [1, 0],
                error: "IllegalMove: removal 9 exceeds height",
            }),
        );
        expect(html).toContain("IllegalMove");
        expect(html).toMatch(/data-action="submit"/);
    });

    it("renders a finished banner without controls", () => {
        const html = renderBoard(
            viewWith({
                state: { ...viewWith({}).state!, status: "FINISHED", winner: "ENGINE", position: [0, 0, 0, 0] },
                banner: "Game over — The engine wins.",
            }),
        );
        expect(html).toContain("Game over");
        expect(html).not.toContain("data-action=\"submit\"");
    });
});
