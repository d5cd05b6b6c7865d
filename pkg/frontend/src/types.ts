export type Side = "HUMAN" | "ENGINE";
export type EngineMode = "THEOREM" | "TABLE";

export interface GameState {
    id: string;
    n: number;
    k: number;
    position: number[];
    to_move: Side;
    status: "ONGOING" | "FINISHED";
    engine_mode: EngineMode;
    winner?: Side;
}

export interface EngineReply {
    move: { start: number; removals: number[] };
    state: GameState;
    note?: string;
}

export interface ClassifyResult {
    theorem: "LOSS" | "WIN" | null;
    solver: "LOSS" | "WIN" | null;
}

/** Everything the board needs to render; rendering is a pure function of this. */
export interface BoardView {
    state: GameState | null;
    /** 1-based start of the selected window, or null when nothing selected. */
    selectedStart: number | null;
    /** Pending per-stack removals for the selected window (length k). */
    pendingRemovals: number[];
    banner: string;
    /** Inline error (e.g. rejected move); pending input is preserved. */
    error: string | null;
    busy: boolean;
    hintEnabled: boolean;
    /** classify verdict for the current position when the hint is on. */
    hintLosing: boolean | null;
}

export function emptyView(): BoardView {
    return {
        state: null,
        selectedStart: null,
        pendingRemovals: [],
        banner: "",
        error: null,
        busy: false,
        hintEnabled: false,
        hintLosing: null,
    };
}
