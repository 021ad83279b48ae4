import type { ApiClient } from "./api.js";
import type { KeyframeResolver } from "./keyframes.js";
import type { BrowsedShot, HistoryEntry, Mode } from "./types.js";
import { KIND_MODES } from "./types.js";

const BROWSED_SLOTS: [keyof HistoryEntry["browsed"], string][] = [
  ["first_shot", "first"],
  ["last_shot", "last"],
  ["longest_shot", "longest"],
];

/** Chronological session log, color-coded by query kind; clicking an entry
 * re-issues its canonical query in the matching mode. */
export class HistoryPanel {
  readonly el: HTMLElement;
  private list: HTMLUListElement;

  constructor(
    private client: ApiClient,
    private sessionId: string,
    private keyframes: KeyframeResolver,
    private onReissue: (query: string, mode: Mode) => void,
  ) {
    this.el = document.createElement("aside");
    this.el.className = "history-panel";
    const heading = document.createElement("h2");
    heading.textContent = "History";
    this.list = document.createElement("ul");
    this.list.className = "history-list";
    this.el.append(heading, this.list);
  }

  async refresh(): Promise<void> {
    let entries: HistoryEntry[];
    try {
      entries = (await this.client.history(this.sessionId)).entries;
    } catch {
      return; // keep the last good rendering
    }
    this.list.replaceChildren();
    for (const entry of entries) {
      this.list.appendChild(this.renderEntry(entry));
    }
  }

  private renderEntry(entry: HistoryEntry): HTMLLIElement {
    const li = document.createElement("li");
    li.className = `history-entry kind-${entry.kind}`;
    li.dataset.entryId = String(entry.entry_id);

    const query = document.createElement("button");
    query.className = "history-query";
    query.textContent = entry.canonical_query;
    query.title = `re-run as ${KIND_MODES[entry.kind]} query`;
    query.addEventListener("click", () =>
      this.onReissue(entry.canonical_query, KIND_MODES[entry.kind]),
    );

    const browsed = document.createElement("div");
    browsed.className = "history-browsed";
    for (const [key, label] of BROWSED_SLOTS) {
      const shot: BrowsedShot | null = entry.browsed[key];
      if (!shot) continue;
      const slot = document.createElement("figure");
      slot.className = `history-slot history-${label}`;
      const img = document.createElement("img");
      img.className = "history-thumb";
      img.alt = shot.shot_id;
      this.keyframes.fill(img, shot.shot_id);
      const caption = document.createElement("figcaption");
      caption.textContent = `${label}: ${shot.shot_id} (${shot.dwell_ms} ms)`;
      slot.append(img, caption);
      browsed.appendChild(slot);
    }

    li.append(query, browsed);
    return li;
  }
}
