/** Page entry point. The service address comes from the `api` query
 * parameter so the static page can point at any running instance:
 *
 *   index.html?api=http://127.0.0.1:8642
 */

import { ApiClient } from "./api.js";
import { GameController } from "./game.js";

const DEFAULT_BASE_URL = "http://127.0.0.1:8642";

export function baseUrlFrom(search: string): string {
  const params = new URLSearchParams(search);
  return params.get("api") ?? DEFAULT_BASE_URL;
}

function boot(): void {
  const root = document.getElementById("app");
  if (root === null) {
    throw new Error("missing #app element");
  }
  const api = new ApiClient(baseUrlFrom(window.location.search));
  new GameController(root, api);
}

if (typeof document !== "undefined" && document.getElementById("app") !== null) {
  boot();
}
