/** Screen flow and round loop.
 *
 * start -> game -> result, with a blocking error screen whenever the
 * service cannot be reached. The controller owns the DOM it mounts, keeps
 * at most one request in flight, and measures how long the player looked
 * at each worm so the service can charge wall-clock time.
 */

import { ApiError, FinalResult, MetricsResponse, PlayerAction, RoundView } from "./api.js";
import { AudioHooks, cueFor, silentAudio } from "./audio.js";
import { createHud, createWormDialog, hudFromView, renderHud } from "./hud.js";

export type Screen = "start" | "game" | "result" | "error";

/** The slice of ApiClient the controller uses; tests stub this directly. */
export interface GameApi {
  createGame(body: {
    deck?: string;
    seed?: number;
    config?: Record<string, number>;
  }): Promise<{ session_id: string; seed: number; view: RoundView }>;
  getState(sessionId: string): Promise<{ phase: string; view?: RoundView; result?: FinalResult }>;
  postAction(
    sessionId: string,
    action: PlayerAction,
    elapsed: number,
  ): Promise<{
    outcome: { kind: string; feedback: string; tip: string | null };
    phase: string;
    view?: RoundView;
    result?: FinalResult;
  }>;
  getMetrics(sessionId: string): Promise<MetricsResponse>;
}

export interface GameOptions {
  audio?: AudioHooks;
  /** Millisecond clock, injectable for tests. */
  now?: () => number;
  deck?: string;
  seed?: number;
  config?: Record<string, number>;
}

const INSTRUCTIONS =
  "Help the little fish eat well. Every worm carries a web address in a " +
  "dialog box: eat the real ones, avoid the fakes. The teacher fish shares " +
  "a hint when asked, but hints cost time, and wrong answers cost time and " +
  "a life. Clear all the worms before the clock runs out.";

export class GameController {
  readonly root: HTMLElement;

  private readonly api: GameApi;
  private readonly audio: AudioHooks;
  private readonly now: () => number;
  private readonly options: GameOptions;

  private screenName: Screen = "start";
  private sessionId: string | null = null;
  private pending = false;
  private roundShownAt = 0;

  constructor(root: HTMLElement, api: GameApi, options: GameOptions = {}) {
    this.root = root;
    this.api = api;
    this.audio = options.audio ?? silentAudio();
    this.now = options.now ?? (() => Date.now());
    this.options = options;
    this.mount();
  }

  get screen(): Screen {
    return this.screenName;
  }

  /** Build the four screens. Only one is ever visible. */
  private mount(): void {
    const doc = this.root.ownerDocument;
    this.root.textContent = "";
    this.root.classList.add("pond-app");

    const start = doc.createElement("section");
    start.id = "screen-start";
    start.className = "screen";
    const title = doc.createElement("h1");
    title.textContent = "Phish Pond";
    const blurb = doc.createElement("p");
    blurb.className = "instructions";
    blurb.textContent = INSTRUCTIONS;
    const startButton = doc.createElement("button");
    startButton.id = "start-button";
    startButton.textContent = "Start";
    startButton.addEventListener("click", () => void this.start());
    start.append(title, blurb, startButton);

    const game = doc.createElement("section");
    game.id = "screen-game";
    game.className = "screen";
    game.hidden = true;
    game.appendChild(createHud(doc));

    const pond = doc.createElement("div");
    pond.className = "pond";
    const teacher = doc.createElement("button");
    teacher.className = "fish fish-teacher";
    teacher.dataset.action = "ask_teacher";
    teacher.title = "Ask the teacher fish";
    teacher.setAttribute("aria-label", "Ask the teacher fish");
    const player = doc.createElement("div");
    player.className = "fish fish-player";
    const worm = doc.createElement("div");
    worm.className = "worm";
    pond.append(teacher, player, worm, createWormDialog(doc));
    game.appendChild(pond);

    const banner = doc.createElement("div");
    banner.dataset.hud = "feedback";
    banner.className = "feedback";
    game.appendChild(banner);

    const controls = doc.createElement("div");
    controls.className = "controls";
    for (const [action, label] of [
      ["eat", "Eat the worm"],
      ["avoid", "Avoid it"],
      ["ask_teacher", "Ask the teacher"],
    ] as const) {
      const button = doc.createElement("button");
      button.dataset.action = action;
      button.textContent = label;
      controls.appendChild(button);
    }
    game.appendChild(controls);
    game.querySelectorAll<HTMLButtonElement>("[data-action]").forEach((button) => {
      button.addEventListener("click", () => {
        void this.act(button.dataset.action as PlayerAction);
      });
    });

    const result = doc.createElement("section");
    result.id = "screen-result";
    result.className = "screen";
    result.hidden = true;
    const resultTitle = doc.createElement("h2");
    resultTitle.dataset.hud = "result-title";
    const score = doc.createElement("p");
    score.append("Final score: ");
    const scoreSlot = doc.createElement("span");
    scoreSlot.dataset.hud = "result-score";
    score.appendChild(scoreSlot);
    const recap = doc.createElement("dl");
    recap.className = "recap";
    for (const [slot, label] of [
      ["accuracy", "Accuracy"],
      ["false-negatives", "Bad worms eaten"],
      ["false-positives", "Good worms avoided"],
      ["teacher-asks", "Teacher visits"],
      ["mean-time", "Seconds per choice"],
    ] as const) {
      const dt = doc.createElement("dt");
      dt.textContent = label;
      const dd = doc.createElement("dd");
      dd.dataset.hud = slot;
      recap.append(dt, dd);
    }
    const again = doc.createElement("button");
    again.id = "again-button";
    again.textContent = "Play again";
    again.addEventListener("click", () => this.reset());
    result.append(resultTitle, score, recap, again);

    const error = doc.createElement("section");
    error.id = "screen-error";
    error.className = "screen";
    error.hidden = true;
    const errorMessage = doc.createElement("p");
    errorMessage.dataset.hud = "error-message";
    const retryButton = doc.createElement("button");
    retryButton.id = "retry-button";
    retryButton.textContent = "Try again";
    retryButton.addEventListener("click", () => void this.retry());
    error.append(errorMessage, retryButton);

    this.root.append(start, game, result, error);
    this.show("start");
  }

  async start(): Promise<void> {
    if (this.pending) {
      return;
    }
    this.pending = true;
    this.setButtonsDisabled(true);
    try {
      const body: { deck?: string; seed?: number; config?: Record<string, number> } = {};
      if (this.options.deck !== undefined) {
        body.deck = this.options.deck;
      }
      if (this.options.seed !== undefined) {
        body.seed = this.options.seed;
      }
      if (this.options.config !== undefined) {
        body.config = this.options.config;
      }
      const created = await this.api.createGame(body);
      this.sessionId = created.session_id;
      this.showRound(created.view);
      this.audio.ambientStart();
    } catch (err) {
      this.fail(err);
    } finally {
      this.pending = false;
      this.setButtonsDisabled(false);
    }
  }

  async act(action: PlayerAction): Promise<void> {
    if (this.pending || this.sessionId === null || this.screenName !== "game") {
      return;
    }
    const elapsed = Math.max(0, Math.floor((this.now() - this.roundShownAt) / 1000));
    this.pending = true;
    this.setButtonsDisabled(true);
    try {
      const response = await this.api.postAction(this.sessionId, action, elapsed);
      this.roundShownAt = this.now();
      this.setFeedback(response.outcome.feedback);
      const cue = cueFor(response.outcome.kind);
      if (cue === "correct") {
        this.audio.correct();
      } else if (cue === "wrong") {
        this.audio.wrong();
      }
      if (response.view !== undefined) {
        renderHud(this.gameScreen(), hudFromView(response.view));
      } else if (response.result !== undefined) {
        await this.finishTo(response.result);
      }
    } catch (err) {
      if (err instanceof ApiError && err.status === 409 && err.result !== null) {
        // The service already closed the session; land on its final result.
        await this.finishTo(err.result);
      } else {
        this.fail(err);
      }
    } finally {
      this.pending = false;
      this.setButtonsDisabled(false);
    }
  }

  /** From the error screen: re-create or re-sync, whichever applies. */
  async retry(): Promise<void> {
    if (this.sessionId === null) {
      await this.start();
      return;
    }
    if (this.pending) {
      return;
    }
    this.pending = true;
    this.setButtonsDisabled(true);
    try {
      const state = await this.api.getState(this.sessionId);
      if (state.view !== undefined) {
        this.showRound(state.view);
        this.audio.ambientStart();
      } else if (state.result !== undefined) {
        await this.finishTo(state.result);
      }
    } catch (err) {
      this.fail(err);
    } finally {
      this.pending = false;
      this.setButtonsDisabled(false);
    }
  }

  private showRound(view: RoundView): void {
    renderHud(this.gameScreen(), hudFromView(view));
    this.setFeedback("");
    this.show("game");
    this.roundShownAt = this.now();
  }

  private async finishTo(result: FinalResult): Promise<void> {
    this.audio.ambientStop();
    this.slot("result-title").textContent = result.phase === "won" ? "You won!" : "Game over";
    this.slot("result-score").textContent = String(result.score);
    let recap: MetricsResponse;
    try {
      recap = await this.api.getMetrics(this.sessionId as string);
    } catch (err) {
      this.fail(err);
      return;
    }
    this.renderRecap(recap);
    this.show("result");
  }

  private renderRecap(recap: MetricsResponse): void {
    const percent =
      recap.accuracy === null ? "n/a" : `${Math.round(recap.accuracy * 100)}%`;
    this.slot("accuracy").textContent = percent;
    this.slot("false-negatives").textContent = String(recap.false_negative_count);
    this.slot("false-positives").textContent = String(recap.false_positive_count);
    this.slot("teacher-asks").textContent = String(recap.teacher_ask_count);
    this.slot("mean-time").textContent =
      recap.mean_time_per_decision === null ? "n/a" : recap.mean_time_per_decision.toFixed(1);
  }

  private fail(err: unknown): void {
    this.audio.ambientStop();
    const message = err instanceof Error ? err.message : String(err);
    this.slot("error-message").textContent = message;
    this.show("error");
  }

  private reset(): void {
    this.sessionId = null;
    this.setFeedback("");
    this.show("start");
  }

  private show(screen: Screen): void {
    this.screenName = screen;
    for (const name of ["start", "game", "result", "error"] as const) {
      const section = this.root.querySelector<HTMLElement>(`#screen-${name}`);
      if (section !== null) {
        section.hidden = name !== screen;
      }
    }
  }

  private setFeedback(text: string): void {
    this.slot("feedback").textContent = text;
  }

  private setButtonsDisabled(disabled: boolean): void {
    this.root.querySelectorAll<HTMLButtonElement>("button").forEach((button) => {
      button.disabled = disabled;
    });
  }

  private gameScreen(): HTMLElement {
    return this.root.querySelector<HTMLElement>("#screen-game") as HTMLElement;
  }

  private slot(name: string): HTMLElement {
    const el = this.root.querySelector<HTMLElement>(`[data-hud="${name}"]`);
    if (el === null) {
      throw new Error(`missing slot ${name}`);
    }
    return el;
  }
}
