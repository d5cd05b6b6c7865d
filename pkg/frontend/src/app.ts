import { ApiError, GameClient } from "./api.js";
import { renderBoard } from "./board.js";
import { isLegalMove } from "./rules.js";
import { BoardView, EngineMode, GameState, emptyView } from "./types.js";

/** Controller: owns a BoardView, re-renders on every change, and talks
 * to the service.  At most one request is in flight per session; the
 * controls stay disabled while the engine thinks. */
export class App {
    view: BoardView = emptyView();

    constructor(
        private root: HTMLElement,
        private client: GameClient,
    ) {
        root.addEventListener("click", (event) => this.onClick(event));
    }

    render(): void {
        this.root.innerHTML = renderBoard(this.view);
    }

    async startGame(
        n: number,
        k: number,
        heights: number[],
        humanFirst: boolean,
        engineMode: EngineMode,
        hintEnabled: boolean,
    ): Promise<void> {
        this.view = emptyView();
        this.view.hintEnabled = hintEnabled;
        try {
            const created = await this.client.createGame(n, k, heights, humanFirst, engineMode);
            this.applyState(created.state);
        } catch (err) {
            this.view.error = describe(err);
            this.render();
            return;
        }
        if (this.view.state && this.view.state.status === "ONGOING"
            && this.view.state.to_move === "ENGINE") {
            await this.engineReply();
        }
        await this.refreshHint();
        this.render();
    }

    private applyState(state: GameState): void {
        this.view.state = state;
        this.view.selectedStart = null;
        this.view.pendingRemovals = [];
        this.view.error = null;
        if (state.status === "FINISHED") {
            const who = state.winner === "HUMAN" ? "You win!" : "The engine wins.";
            this.view.banner = `Game over — ${who}`;
        } else {
            this.view.banner = state.to_move === "HUMAN" ? "Your move." : "Engine to move.";
        }
    }

    private async onClick(event: Event): Promise<void> {
        const target = event.target as HTMLElement;
        const stackEl = target.closest<HTMLElement>("[data-stack]");
        if (stackEl && !this.view.busy) {
            this.selectWindow(Number(stackEl.dataset.stack));
            this.render();
            return;
        }
        const action = target.dataset.action;
        if (!action || this.view.busy) return;
        if (action === "inc" || action === "dec") {
            this.step(Number(target.dataset.slot), action === "inc" ? 1 : -1);
            this.render();
        } else if (action === "submit") {
            await this.submitMove();
        }
    }

    selectWindow(start: number): void {
        const state = this.view.state;
        if (!state || state.status === "FINISHED" || state.to_move !== "HUMAN") return;
        this.view.selectedStart = start;
        this.view.pendingRemovals = new Array(state.k).fill(0);
        this.view.error = null;
    }

    step(slot: number, delta: number): void {
        const state = this.view.state;
        if (!state || this.view.selectedStart === null) return;
        const stacks = windowOf(state, this.view.selectedStart);
        const max = state.position[stacks[slot]];
        const next = Math.min(max, Math.max(0, (this.view.pendingRemovals[slot] ?? 0) + delta));
        this.view.pendingRemovals[slot] = next;
    }

    async submitMove(): Promise<void> {
        const state = this.view.state;
        if (!state || this.view.selectedStart === null) return;
        if (!isLegalMove(state.position, state.k, this.view.selectedStart, this.view.pendingRemovals)) {
            return; // the submit button is disabled for illegal input anyway
        }
        this.view.busy = true;
        this.view.error = null;
        this.render();
        try {
            const after = await this.client.submitMove(
                state.id,
                this.view.selectedStart,
                this.view.pendingRemovals,
            );
            this.applyState(after);
        } catch (err) {
            // rejected move: keep the pending input for correction
            this.view.error = describe(err);
            this.view.busy = false;
            this.render();
            return;
        }
        if (this.view.state && this.view.state.status === "ONGOING") {
            await this.engineReply();
        }
        this.view.busy = false;
        await this.refreshHint();
        this.render();
    }

    private async engineReply(): Promise<void> {
        const state = this.view.state!;
        try {
            const reply = await this.client.engineMove(state.id);
            this.applyState(reply.state);
            if (reply.note) {
                this.view.banner += " (engine was in a losing position)";
            }
        } catch (err) {
            this.view.error = describe(err);
        }
    }

    private async refreshHint(): Promise<void> {
        const state = this.view.state;
        this.view.hintLosing = null;
        if (!this.view.hintEnabled || !state || state.status === "FINISHED") return;
        try {
            const verdict = await this.client.classify(state.n, state.k, state.position);
            const call = verdict.theorem ?? verdict.solver;
            this.view.hintLosing = call === null ? null : call === "LOSS";
            if (this.view.hintLosing && state.to_move === "HUMAN") {
                this.view.banner = "Your move — you are in a losing position.";
            }
        } catch {
            this.view.hintLosing = null; // hint is best-effort
        }
    }
}

function windowOf(state: GameState, start: number): number[] {
    const out: number[] = [];
    for (let j = 0; j < state.k; j++) {
        out.push((start - 1 + j) % state.n);
    }
    return out;
}

function describe(err: unknown): string {
    if (err instanceof ApiError) return `${err.code}: ${err.message}`;
    return String(err);
}
