import type { ApiClient } from "./api.js";

/** Resolves shot ids to keyframe URLs, fetching each video's shot list once. */
export class KeyframeResolver {
  private byVideo = new Map<string, Promise<Map<string, string | null>>>();

  constructor(private client: ApiClient) {}

  async resolve(shotId: string): Promise<string | null> {
    const videoId = shotId.split("#")[0] ?? "";
    let refs = this.byVideo.get(videoId);
    if (!refs) {
      refs = this.client
        .videoShots(videoId)
        .then((resp) => new Map(resp.shots.map((s) => [s.shot_id, s.keyframe_ref])))
        .catch(() => {
          this.byVideo.delete(videoId);
          return new Map<string, string | null>();
        });
      this.byVideo.set(videoId, refs);
    }
    const ref = (await refs).get(shotId);
    return ref ? this.client.assetUrl(ref) : null;
  }

  /** Fire-and-forget variant: sets the image src once resolved. */
  fill(img: HTMLImageElement, shotId: string): void {
    void this.resolve(shotId).then((url) => {
      if (url) img.src = url;
    });
  }
}
