/** HUD model and DOM rendering for an in-progress round.
 *
 * Every displayed value is copied verbatim from a service payload; the
 * client adds presentation (hearts, labels) but never derives game state.
 */

import { RoundView } from "./api.js";

export interface HudModel {
  score: number;
  lives: number;
  timeRemaining: number;
  roundIndex: number;
  totalRounds: number;
  url: string;
  tip: string | null;
}

export function hudFromView(view: RoundView): HudModel {
  return {
    score: view.score,
    lives: view.lives,
    timeRemaining: view.time_remaining,
    roundIndex: view.round_index,
    totalRounds: view.total_rounds,
    url: view.url,
    tip: view.tip,
  };
}

function slot(doc: Document, parent: HTMLElement, name: string, className: string): HTMLElement {
  const el = doc.createElement("span");
  el.dataset.hud = name;
  el.className = className;
  parent.appendChild(el);
  return el;
}

/** Build the HUD skeleton. Same structure in the page and in tests. */
export function createHud(doc: Document): HTMLElement {
  const hud = doc.createElement("div");
  hud.className = "hud";

  const score = doc.createElement("div");
  score.className = "hud-item";
  score.append("Score: ");
  slot(doc, score, "score", "hud-score");

  const lives = doc.createElement("div");
  lives.className = "hud-item";
  lives.append("Lives: ");
  slot(doc, lives, "lives", "hud-lives");

  const time = doc.createElement("div");
  time.className = "hud-item";
  time.append("Time: ");
  slot(doc, time, "time", "hud-time");
  time.append("s");

  const round = doc.createElement("div");
  round.className = "hud-item";
  round.append("Worm ");
  slot(doc, round, "round", "hud-round");
  round.append(" of ");
  slot(doc, round, "total", "hud-total");

  hud.append(score, lives, time, round);
  return hud;
}

/** Build the worm dialog: the address line with the tip slot directly below. */
export function createWormDialog(doc: Document): HTMLElement {
  const dialog = doc.createElement("div");
  dialog.className = "worm-dialog";

  const url = doc.createElement("div");
  url.dataset.hud = "url";
  url.className = "worm-url";

  const tip = doc.createElement("div");
  tip.dataset.hud = "tip";
  tip.className = "worm-tip";
  tip.hidden = true;

  dialog.append(url, tip);
  return dialog;
}

function find(root: HTMLElement, name: string): HTMLElement {
  const el = root.querySelector<HTMLElement>(`[data-hud="${name}"]`);
  if (el === null) {
    throw new Error(`missing hud slot ${name}`);
  }
  return el;
}

export function renderHud(root: HTMLElement, model: HudModel): void {
  find(root, "score").textContent = String(model.score);
  find(root, "lives").textContent = "♥".repeat(model.lives);
  find(root, "time").textContent = String(model.timeRemaining);
  find(root, "round").textContent = String(model.roundIndex + 1);
  find(root, "total").textContent = String(model.totalRounds);
  find(root, "url").textContent = model.url;
  const tip = find(root, "tip");
  tip.textContent = model.tip ?? "";
  tip.hidden = model.tip === null;
}
