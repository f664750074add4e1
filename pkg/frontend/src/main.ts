/** Browser entry: wires the session view, seed diagram and walk stepper to the DOM. */

import { ApiClient, ApiRequestError } from "./api.js";
import { boxLabel, renderSeed, schemaError, toSvg } from "./render.js";
import { SessionView } from "./state.js";
import type { MoveView } from "./types.js";
import { WalkController } from "./walk.js";

function moveTooltip(move: MoveView): string {
  if (move.kind === "permutation") return `B_${move.s}: permutation`;
  const middle = (move.middle ?? []).map(boxLabel).join(" * ");
  return `B_${move.s}: mutation at ${boxLabel(move.tbox ?? null)}; factors ${middle}`;
}

async function boot(root: HTMLElement): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient("");
  const view = await SessionView.open(api, {
    type: params.get("type") ?? "A2",
    range: params.get("chain") ? undefined : (params.get("range") ?? "-3..0"),
    chain: params.get("chain") ?? undefined,
  });
  const walk = new WalkController(view);

  const banner = document.createElement("div");
  banner.className = "banner";
  const diagram = document.createElement("div");
  diagram.className = "diagram";
  const controls = document.createElement("div");
  controls.className = "controls";
  const status = document.createElement("div");
  status.className = "status";
  const historyPanel = document.createElement("pre");
  historyPanel.className = "history";
  root.replaceChildren(banner, diagram, controls, status, historyPanel);

  const showError = (err: unknown) => {
    status.textContent =
      err instanceof ApiRequestError ? `rejected (${err.status}): ${err.message}` : String(err);
    status.classList.add("error");
  };

  const draw = () => {
    const seed = view.payload.seed;
    const mismatch = schemaError(seed);
    banner.textContent = mismatch ? `schema mismatch: ${mismatch}` : "";
    banner.style.display = mismatch ? "block" : "none";
    if (mismatch) return;
    diagram.innerHTML = toSvg(renderSeed(seed));
    status.textContent = view.lastError
      ? `rejected: ${view.lastError}`
      : seed.lambda_ok
        ? "pairing check: ok"
        : `pairing check: FAIL (${seed.lambda_witness ?? "no witness"})`;
    status.classList.toggle("error", view.lastError !== null || !seed.lambda_ok);

    for (const node of diagram.querySelectorAll<SVGGElement>("g.vertex.clickable")) {
      node.addEventListener("click", async () => {
        const k = Number(node.dataset.k);
        try {
          await view.applyMutation(k);
        } catch (err) {
          showError(err);
          return;
        }
        draw();
      });
    }

    controls.replaceChildren();
    for (const move of view.payload.chain.moves) {
      const button = document.createElement("button");
      button.textContent = `B_${move.s} (${move.kind})`;
      button.title = moveTooltip(move);
      button.addEventListener("click", async () => {
        try {
          await view.applyBoxMove(move.s);
        } catch (err) {
          showError(err);
          return;
        }
        draw();
      });
      controls.append(button);
    }

    const targetInput = document.createElement("input");
    targetInput.placeholder = "target chain, e.g. -1:RLL";
    const startButton = document.createElement("button");
    startButton.textContent = "plan walk";
    const stepButton = document.createElement("button");
    stepButton.textContent = "step";
    const abortButton = document.createElement("button");
    abortButton.textContent = "abort";
    startButton.addEventListener("click", async () => {
      try {
        const steps = await walk.start(targetInput.value);
        status.textContent = `walk to ${walk.target}: ${steps} step(s) planned`;
        status.classList.remove("error");
      } catch (err) {
        if (err instanceof ApiRequestError && err.status === 409) {
          window.alert(`cannot walk: ${err.message}`);
        }
        showError(err);
      }
    });
    stepButton.addEventListener("click", async () => {
      try {
        const moved = await walk.advance();
        if (!moved) status.textContent = "walk finished";
      } catch (err) {
        showError(err);
        return;
      }
      draw();
    });
    abortButton.addEventListener("click", async () => {
      try {
        await walk.abort();
      } catch (err) {
        showError(err);
        return;
      }
      draw();
    });
    controls.append(targetInput, startButton, stepButton, abortButton);

    historyPanel.textContent = view.history
      .map((op, idx) => `${idx + 1}. ${op.op} ${op.op === "mutate" ? op.k : op.s}`)
      .join("\n");
  };

  draw();
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    boot(root).catch((err) => {
      root.textContent = `failed to open session: ${err}`;
    });
  }
}
