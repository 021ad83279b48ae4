import { ApiError, type ApiClient } from "./api.js";
import type { KeyframeResolver } from "./keyframes.js";

export interface OverlayCallbacks {
  onClosed: (shotId: string, dwellMs: number) => void;
  onNotFound: (message: string) => void;
  onSubmitStub?: (shotId: string, positionS: number) => void;
}

/** Detail overlay for one shot: playback position, video metadata, top
 * features, and a precise-timestamp submit stub. Dwell time is measured from
 * open to close and reported as an inspection event by the app. */
export class VideoOverlay {
  readonly el: HTMLElement;
  private openShotId: string | null = null;
  private openedAtMs = 0;

  constructor(
    private client: ApiClient,
    private keyframes: KeyframeResolver,
    private callbacks: OverlayCallbacks,
    private now: () => number = () => Date.now(),
  ) {
    this.el = document.createElement("div");
    this.el.className = "overlay";
    this.el.hidden = true;
  }

  isOpen(): boolean {
    return this.openShotId !== null;
  }

  async open(shotId: string): Promise<void> {
    if (this.openShotId) this.close();
    let shotResp;
    let videoResp;
    try {
      shotResp = await this.client.shot(shotId);
      videoResp = await this.client.video(shotResp.shot.video_id);
    } catch (error) {
      const message =
        error instanceof ApiError && error.status === 404
          ? `shot ${shotId} not found`
          : `could not open ${shotId}`;
      this.callbacks.onNotFound(message);
      return;
    }

    this.openShotId = shotId;
    this.openedAtMs = this.now();
    const { shot, profile } = shotResp;
    const video = videoResp.video;
    this.el.replaceChildren();

    const panel = document.createElement("div");
    panel.className = "overlay-panel";

    const closeButton = document.createElement("button");
    closeButton.className = "overlay-close";
    closeButton.textContent = "×";
    closeButton.addEventListener("click", () => this.close());

    const img = document.createElement("img");
    img.className = "overlay-keyframe";
    img.alt = shot.shot_id;
    this.keyframes.fill(img, shot.shot_id);

    const title = document.createElement("h2");
    title.textContent = video.title;
    const position = document.createElement("p");
    position.className = "overlay-position";
    position.textContent = `${shot.shot_id} · ${shot.start_s}s – ${shot.end_s}s of ${video.duration_s}s`;
    const description = document.createElement("p");
    description.className = "overlay-description";
    description.textContent = video.description;
    const tags = document.createElement("p");
    tags.className = "overlay-tags";
    tags.textContent = video.tags.join(", ");

    const features = document.createElement("dl");
    features.className = "overlay-features";
    for (const [category, entries] of Object.entries(profile)) {
      if (!entries.length) continue;
      const dt = document.createElement("dt");
      dt.textContent = category;
      const dd = document.createElement("dd");
      dd.textContent = entries.map((e) => `${e.label} (${e.confidence.toFixed(2)})`).join(", ");
      features.append(dt, dd);
    }

    // Precise-timestamp submission targets an external judge; stub for now.
    const submit = document.createElement("button");
    submit.className = "overlay-submit";
    submit.textContent = `submit @ ${shot.start_s}s`;
    submit.addEventListener("click", () =>
      this.callbacks.onSubmitStub?.(shot.shot_id, shot.start_s),
    );

    panel.append(closeButton, img, title, position, description, tags, features, submit);
    this.el.appendChild(panel);
    this.el.hidden = false;
  }

  close(): void {
    if (!this.openShotId) return;
    const shotId = this.openShotId;
    const dwellMs = this.now() - this.openedAtMs;
    this.openShotId = null;
    this.el.hidden = true;
    this.el.replaceChildren();
    this.callbacks.onClosed(shotId, dwellMs);
  }

  openedAt(): number {
    return this.openedAtMs;
  }

  handleKey(event: KeyboardEvent): void {
    if (event.key === "Escape") this.close();
  }
}
