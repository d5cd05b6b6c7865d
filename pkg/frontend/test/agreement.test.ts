/** Client/server legality agreement: the browser-side guard must accept
 * exactly the moves the service accepts.  This spins up the real Python
 * service and replays 1000 random submissions at small heights against
 * a fresh session each, comparing verdicts. */

import { ChildProcess, spawn, spawnSync } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { isLegalMove } from "../src/rules.js";

const PORT = 19_000 + (process.pid % 900);
const BASE = `http://127.0.0.1:${PORT}`;

function pythonHasService(): boolean {
    const probe = spawnSync("python3", ["-c", "import circnim.service"], {
        timeout: 20_000,
    });
    return probe.status === 0;
}

const available = pythonHasService();

describe.skipIf(!available)("client-side legality vs server verdicts", () => {
    let server: ChildProcess;

    beforeAll(async () => {
        server = spawn(
            "python3",
            [
                "-c",
                "import uvicorn; from circnim.service import create_app; " +
                    `uvicorn.run(create_app(), host='127.0.0.1', port=${PORT}, log_level='error')`,
            ],
            { stdio: "ignore" },
        );
        const deadline = Date.now() + 30_000;
        for (;;) {
            try {
                const r = await fetch(`${BASE}/classify?n=2&k=1&pos=(0,0)`);
                if (r.ok) return;
            } catch {
                // not up yet
            }
            if (Date.now() > deadline) throw new Error("service did not start");
            await new Promise((resolve) => setTimeout(resolve, 200));
        }
    }, 40_000);

    afterAll(() => {
        server?.kill();
    });

    it("agrees on 1000 random submissions", async () => {
        // deterministic linear-congruential generator
        let seed = 0x2025_0811 >>> 0;
        const rand = (bound: number): number => {
            seed = (Math.imul(seed, 1664525) + 1013904223) >>> 0;
            return seed % bound;
        };

        const specs: Array<[number, number]> = [
            [4, 2], [5, 2], [5, 3], [6, 3], [6, 4], [8, 6], [3, 1], [4, 4],
        ];
        let submissions = 0;
        let acceptedCount = 0;
        while (submissions < 1000) {
            const [n, k] = specs[rand(specs.length)];
            const position = Array.from({ length: n }, () => rand(3));
            if (position.every((h) => h === 0)) continue;
            const create = await fetch(`${BASE}/games`, {
                method: "POST",
                headers: { "content-type": "application/json" },
                body: JSON.stringify({ n, k, position, human_first: true }),
            });
            expect(create.status).toBe(200);
            const { id } = (await create.json()) as { id: string };

            // random candidate move, deliberately often illegal
            const start = rand(n + 2); // 0 and n+1 are out of range
            const width = rand(4) === 0 ? k + (rand(2) ? 1 : -1) : k;
            const removals = Array.from({ length: Math.max(0, width) }, () => rand(4));
            const clientSaysLegal = isLegalMove(position, k, start, removals);

            const submit = await fetch(`${BASE}/games/${id}/moves`, {
                method: "POST",
                headers: { "content-type": "application/json" },
                body: JSON.stringify({ start, removals }),
            });
            const serverAccepts = submit.status === 200;
            expect(
                serverAccepts,
                `spec CN(${n},${k}) pos=[${position}] start=${start} removals=[${removals}]`,
            ).toBe(clientSaysLegal);
            if (serverAccepts) acceptedCount += 1;
            submissions += 1;
        }
        // the sample must exercise both verdicts to mean anything
        expect(acceptedCount).toBeGreaterThan(100);
        expect(acceptedCount).toBeLessThan(900);
    }, 300_000);
});
