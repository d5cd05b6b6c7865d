import { isLegalMove, windowStacks } from "./rules.js";
import { BoardView } from "./types.js";

const SIZE = 420;
const CENTER = SIZE / 2;
const RADIUS = SIZE / 2 - 56;

/** Screen position of stack i (0-based): stack 1 sits at 12 o'clock and
 * the numbering runs clockwise. */
export function stackCenter(n: number, i: number): { x: number; y: number } {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    return {
        x: CENTER + RADIUS * Math.cos(angle),
        y: CENTER + RADIUS * Math.sin(angle),
    };
}

/** Render the whole board as markup.  Pure: same view, same string. */
export function renderBoard(view: BoardView): string {
    if (!view.state) {
        return `<div class="empty">No game yet — start one above.</div>`;
    }
    const { n, k, position } = view.state;
    const covered = new Set(
        view.selectedStart !== null ? windowStacks(n, k, view.selectedStart) : [],
    );
    const boardClass = view.hintEnabled && view.hintLosing !== null
        ? (view.hintLosing ? "board losing" : "board winning")
        : "board";

    const stacks = position
        .map((height, i) => {
            const { x, y } = stackCenter(n, i);
            const classes = ["stack"];
            if (covered.has(i)) classes.push("covered");
            if (view.selectedStart === i + 1) classes.push("origin");
            return (
                `<g class="${classes.join(" ")}" data-stack="${i + 1}">` +
                `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="26"></circle>` +
                `<text x="${x.toFixed(1)}" y="${(y + 5).toFixed(1)}">${height}</text>` +
                `<text class="idx" x="${x.toFixed(1)}" y="${(y + 40).toFixed(1)}">#${i + 1}</text>` +
                `</g>`
            );
        })
        .join("");

    return (
        `<div class="${boardClass}">` +
        `<svg viewBox="0 0 ${SIZE} ${SIZE}" role="img" aria-label="board">` +
        `<circle class="ring" cx="${CENTER}" cy="${CENTER}" r="${RADIUS}"></circle>` +
        stacks +
        `</svg>` +
        renderControls(view) +
        renderBanner(view) +
        `</div>`
    );
}

function renderControls(view: BoardView): string {
    const state = view.state!;
    const { n, k, position } = state;
    if (state.status === "FINISHED") {
        return "";
    }
    if (view.selectedStart === null) {
        return `<div class="controls hint-select">Click a stack to start a window of ${k}.</div>`;
    }
    const stacks = windowStacks(n, k, view.selectedStart);
    const steppers = stacks
        .map((stackIdx, j) => {
            const max = position[stackIdx];
            const value = view.pendingRemovals[j] ?? 0;
            return (
                `<div class="stepper" data-slot="${j}">` +
                `<span class="label">#${stackIdx + 1}</span>` +
                `<button data-action="dec" data-slot="${j}" ${value <= 0 ? "disabled" : ""}>−</button>` +
                `<span class="value">${value}</span>` +
                `<button data-action="inc" data-slot="${j}" ${value >= max ? "disabled" : ""}>+</button>` +
                `<span class="max">/${max}</span>` +
                `</div>`
            );
        })
        .join("");
    const legal = isLegalMove(position, k, view.selectedStart, view.pendingRemovals);
    const submit =
        `<button class="submit" data-action="submit" ` +
        `${legal && !view.busy ? "" : "disabled"}>Take tokens</button>`;
    return `<div class="controls">${steppers}${submit}</div>`;
}

function renderBanner(view: BoardView): string {
    const parts: string[] = [];
    if (view.banner) parts.push(`<div class="banner">${view.banner}</div>`);
    if (view.error) parts.push(`<div class="error">${view.error}</div>`);
    return parts.join("");
}
