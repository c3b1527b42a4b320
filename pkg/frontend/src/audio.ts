/** Audio cue seams. No assets ship with the client; the default
 * implementation is silent and real sounds plug in behind the interface.
 */

export interface AudioHooks {
  /** Round answered the way the service scored as a point. */
  correct(): void;
  /** Round answered the way the service penalised. */
  wrong(): void;
  ambientStart(): void;
  ambientStop(): void;
}

export function silentAudio(): AudioHooks {
  return {
    correct() {},
    wrong() {},
    ambientStart() {},
    ambientStop() {},
  };
}

/** Pick the cue for an action outcome reported by the service.
 *
 * The outcome kind is a wire enum, not a judgement the client makes:
 * asking the teacher plays neither cue.
 */
export function cueFor(outcomeKind: string): "correct" | "wrong" | null {
  if (outcomeKind === "tip_given") {
    return null;
  }
  return outcomeKind.startsWith("correct") ? "correct" : "wrong";
}
