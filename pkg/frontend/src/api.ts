import { ClassifyResult, EngineMode, EngineReply, GameState } from "./types.js";

export class ApiError extends Error {
    constructor(
        public code: string,
        message: string,
    ) {
        super(message);
    }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
    const response = await fetch(url, init);
    const body = await response.json();
    if (!response.ok) {
        throw new ApiError(body.error ?? "HttpError", body.message ?? response.statusText);
    }
    return body as T;
}

/** Thin client for the play service; all state lives server-side. */
export class GameClient {
    constructor(private baseUrl: string = "") {}

    createGame(
        n: number,
        k: number,
        position: number[],
        humanFirst: boolean,
        engineMode: EngineMode = "THEOREM",
    ): Promise<{ id: string; state: GameState }> {
        return request(`${this.baseUrl}/games`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({
                n,
                k,
                position,
                human_first: humanFirst,
                engine_mode: engineMode,
            }),
        });
    }

    getGame(id: string): Promise<GameState> {
        return request(`${this.baseUrl}/games/${id}`);
    }

    submitMove(id: string, start: number, removals: number[]): Promise<GameState> {
        return request(`${this.baseUrl}/games/${id}/moves`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ start, removals }),
        });
    }

    engineMove(id: string): Promise<EngineReply> {
        return request(`${this.baseUrl}/games/${id}/engine-move`, { method: "POST" });
    }

    classify(n: number, k: number, position: number[]): Promise<ClassifyResult> {
        const pos = `(${position.join(",")})`;
        const params = new URLSearchParams({ n: String(n), k: String(k), pos });
        return request(`${this.baseUrl}/classify?${params}`);
    }
}
