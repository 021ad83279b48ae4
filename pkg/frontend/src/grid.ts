import type { ApiClient } from "./api.js";
import type { KeyframeResolver } from "./keyframes.js";
import type { Mode, ShotHit, ShotProfile } from "./types.js";

const SIMILAR_TERMS = 5;

/** Top-confidence features of a shot, rendered as a flag query. The service
 * does all ranking; this only writes the query a user would type. */
export function similarityQuery(profile: ShotProfile, maxTerms = SIMILAR_TERMS): string {
  const atoms: { category: string; label: string; confidence: number }[] = [];
  for (const [category, features] of Object.entries(profile)) {
    for (const f of features) atoms.push({ category, label: f.label, confidence: f.confidence });
  }
  atoms.sort((a, b) => b.confidence - a.confidence || a.category.localeCompare(b.category) || a.label.localeCompare(b.label));
  return atoms
    .slice(0, maxTerms)
    .map((a) => `--${a.category} ${a.label}`)
    .join(" ");
}

export class ShotGridView {
  readonly el: HTMLElement;

  constructor(
    hits: ShotHit[],
    private client: ApiClient,
    keyframes: KeyframeResolver,
    private onOpenShot: (shotId: string) => void,
    private onIssueQuery: (query: string, mode: Mode) => void,
    private onError: (message: string) => void,
  ) {
    this.el = document.createElement("div");
    this.el.className = "shot-grid";
    if (!hits.length) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "No shots matched this query.";
      this.el.appendChild(empty);
      return;
    }
    // rendered strictly in response order
    for (const hit of hits) {
      const cell = document.createElement("figure");
      cell.className = "shot-cell";
      cell.dataset.shotId = hit.shot_id;

      const img = document.createElement("img");
      img.className = "shot-thumb";
      img.alt = hit.shot_id;
      keyframes.fill(img, hit.shot_id);
      img.addEventListener("click", () => this.onOpenShot(hit.shot_id));

      const caption = document.createElement("figcaption");
      caption.textContent = `${hit.shot_id} · ${hit.score.toFixed(2)}`;

      const menuButton = document.createElement("button");
      menuButton.className = "shot-menu-button";
      menuButton.textContent = "⋯";
      menuButton.addEventListener("click", (event) => {
        event.stopPropagation();
        this.toggleMenu(cell, hit.shot_id);
      });

      cell.append(img, caption, menuButton);
      this.el.appendChild(cell);
    }
  }

  private toggleMenu(cell: HTMLElement, shotId: string): void {
    const existing = cell.querySelector(".shot-menu");
    this.el.querySelectorAll(".shot-menu").forEach((m) => m.remove());
    if (existing) return;

    const menu = document.createElement("div");
    menu.className = "shot-menu";
    for (const mode of ["shots", "map"] as Mode[]) {
      const item = document.createElement("button");
      item.className = "shot-menu-item";
      item.textContent = `search similar in ${mode} mode`;
      item.addEventListener("click", async () => {
        menu.remove();
        try {
          const resp = await this.client.shot(shotId);
          const query = similarityQuery(resp.profile);
          if (query) this.onIssueQuery(query, mode);
        } catch {
          this.onError(`could not load features of ${shotId}`);
        }
      });
      menu.appendChild(item);
    }
    cell.appendChild(menu);
  }
}
