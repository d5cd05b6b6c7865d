import { GameClient } from "./api.js";
import { App } from "./app.js";
import { EngineMode } from "./types.js";

function field<T extends HTMLElement>(id: string): T {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
}

export function boot(): void {
    const root = field<HTMLElement>("app");
    const client = new GameClient(
        (window as unknown as { CIRCNIM_API?: string }).CIRCNIM_API ?? "",
    );
    const app = new App(root, client);
    app.render();

    field<HTMLFormElement>("start-form").addEventListener("submit", (event) => {
        event.preventDefault();
        const n = Number(field<HTMLInputElement>("input-n").value);
        const k = Number(field<HTMLInputElement>("input-k").value);
        const heights = field<HTMLInputElement>("input-heights")
            .value.split(",")
            .map((part) => Number(part.trim()));
        const humanFirst = field<HTMLSelectElement>("input-first").value === "human";
        const mode = field<HTMLSelectElement>("input-mode").value as EngineMode;
        const hint = field<HTMLInputElement>("input-hint").checked;
        if (heights.length !== n || heights.some((h) => !Number.isInteger(h) || h < 0)) {
            alert(`need ${n} comma-separated non-negative heights`);
            return;
        }
        void app.startGame(n, k, heights, humanFirst, mode, hint);
    });
}

boot();
