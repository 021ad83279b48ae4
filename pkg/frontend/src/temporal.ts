import type { KeyframeResolver } from "./keyframes.js";
import type { SequenceHit } from "./types.js";

/** One row per video: the best in-order shot chain, left to right. */
export class TemporalView {
  readonly el: HTMLElement;

  constructor(
    matches: SequenceHit[],
    keyframes: KeyframeResolver,
    onOpenShot: (shotId: string) => void,
  ) {
    this.el = document.createElement("div");
    this.el.className = "temporal-list";
    if (!matches.length) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "No video contains this sequence within the window.";
      this.el.appendChild(empty);
      return;
    }
    for (const match of matches) {
      const row = document.createElement("div");
      row.className = "temporal-row";
      row.dataset.videoId = match.video_id;

      const header = document.createElement("span");
      header.className = "temporal-video";
      header.textContent = `${match.video_id} · ${match.score.toFixed(2)}`;
      row.appendChild(header);

      for (const hit of match.hits) {
        const img = document.createElement("img");
        img.className = "shot-thumb";
        img.alt = hit.shot_id;
        img.title = `${hit.shot_id} @ ${hit.start_s}s`;
        keyframes.fill(img, hit.shot_id);
        img.addEventListener("click", () => onOpenShot(hit.shot_id));
        row.appendChild(img);
      }
      this.el.appendChild(row);
    }
  }
}
