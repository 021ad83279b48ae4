import type { ApiClient } from "./api.js";
import type { KeyframeResolver } from "./keyframes.js";
import type { SimilarNeighbor, VideoHit } from "./types.js";

const NEIGHBOR_K = 8;

/** Map-style navigator over ranked videos: left/right follow the rank list,
 * up/down walk the anchor video's similarity neighbors. */
export class MapNavigator {
  readonly el: HTMLElement;
  private rank = 0; // position in the ranked list (the horizontal anchor)
  private depth = 0; // 0 = on the anchor; n = n-th similarity neighbor
  private neighbors: SimilarNeighbor[] = [];
  private fetchSeq = 0;

  constructor(
    private ranked: VideoHit[],
    private client: ApiClient,
    private keyframes: KeyframeResolver,
    private onOpenShot: (shotId: string) => void,
  ) {
    this.el = document.createElement("div");
    this.el.className = "map-view";
    if (!ranked.length) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "No videos matched this query.";
      this.el.appendChild(empty);
      return;
    }
    this.el.tabIndex = 0;
    void this.moveTo(0);
  }

  /** The video currently centered on screen. */
  centeredVideoId(): string | null {
    if (!this.ranked.length) return null;
    if (this.depth === 0) return this.ranked[this.rank]?.video_id ?? null;
    return this.neighbors[this.depth - 1]?.video_id ?? null;
  }

  handleKey(event: KeyboardEvent): void {
    if (!this.ranked.length) return;
    switch (event.key) {
      case "ArrowRight":
        event.preventDefault();
        void this.moveTo(Math.min(this.rank + 1, this.ranked.length - 1));
        break;
      case "ArrowLeft":
        event.preventDefault();
        void this.moveTo(Math.max(this.rank - 1, 0));
        break;
      case "ArrowDown":
        event.preventDefault();
        if (this.depth < this.neighbors.length) {
          this.depth += 1;
          this.render();
        }
        break;
      case "ArrowUp":
        event.preventDefault();
        if (this.depth > 0) {
          this.depth -= 1;
          this.render();
        }
        break;
    }
  }

  private async moveTo(rank: number): Promise<void> {
    this.rank = rank;
    this.depth = 0;
    this.neighbors = [];
    this.render();
    const anchor = this.ranked[rank];
    if (!anchor) return;
    const n = ++this.fetchSeq;
    try {
      const resp = await this.client.similar(anchor.video_id, NEIGHBOR_K);
      if (n !== this.fetchSeq) return; // navigation moved on
      this.neighbors = resp.results;
      this.render();
    } catch {
      if (n !== this.fetchSeq) return;
      this.neighbors = []; // video without a vector: vertical axis stays empty
      this.render();
    }
  }

  private render(): void {
    const anchor = this.ranked[this.rank];
    if (!anchor) return;
    const centered = this.centeredVideoId() ?? anchor.video_id;
    this.el.replaceChildren();

    const corners = document.createElement("div");
    corners.className = "map-corners";

    const termCounts = document.createElement("div");
    termCounts.className = "map-corner map-terms";
    termCounts.textContent = anchor.per_term_counts
      .map((t) => `${t.term}: ${t.count}`)
      .join("  ");

    const position = document.createElement("div");
    position.className = "map-corner map-position";
    position.textContent =
      this.depth === 0
        ? `rank ${this.rank + 1} of ${this.ranked.length} · score ${anchor.score.toFixed(2)}`
        : `neighbor ${this.depth} of ${this.neighbors.length} · cosine ${this.neighbors[this.depth - 1]?.cosine.toFixed(3) ?? "?"}`;

    corners.append(termCounts, position);

    const center = document.createElement("figure");
    center.className = "map-center";
    center.dataset.videoId = centered;
    const img = document.createElement("img");
    img.className = "map-thumb";
    img.alt = centered;
    this.keyframes.fill(img, `${centered}#0`);
    img.addEventListener("click", () => this.onOpenShot(`${centered}#0`));
    const caption = document.createElement("figcaption");
    caption.textContent = centered;
    center.append(img, caption);

    this.el.append(corners, center);
  }
}
