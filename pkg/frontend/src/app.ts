import { ApiClient, ApiError, QuerySequencer } from "./api.js";
import { StatusBanner, ToastHost } from "./banner.js";
import { ShotGridView } from "./grid.js";
import { HistoryPanel } from "./history.js";
import { KeyframeResolver } from "./keyframes.js";
import { MapNavigator } from "./map.js";
import { VideoOverlay } from "./overlay.js";
import { SearchBar } from "./searchbar.js";
import { newSessionId } from "./session.js";
import { TemporalView } from "./temporal.js";
import type { Mode } from "./types.js";
import { MODE_KINDS } from "./types.js";

interface Tab {
  id: number;
  mode: Mode;
  canonicalQuery: string;
  entryId: number | null;
  button: HTMLButtonElement;
  content: HTMLElement;
  navigator?: MapNavigator;
}

export interface AppOptions {
  sessionId?: string;
  now?: () => number;
}

export class App {
  readonly el: HTMLElement;
  readonly sessionId: string;
  readonly banner = new StatusBanner();
  readonly toasts = new ToastHost();
  readonly searchBar: SearchBar;
  readonly historyPanel: HistoryPanel;
  readonly overlay: VideoOverlay;
  readonly keyframes: KeyframeResolver;
  readonly tabs: Tab[] = [];
  activeTab: Tab | null = null;

  private sequencer = new QuerySequencer();
  private tabBar: HTMLElement;
  private tabContents: HTMLElement;
  private nextTabId = 1;

  constructor(
    readonly client: ApiClient,
    options: AppOptions = {},
  ) {
    this.sessionId = options.sessionId ?? newSessionId();
    this.keyframes = new KeyframeResolver(client);

    this.searchBar = new SearchBar(
      client,
      this.keyframes,
      (message) => this.banner.show(message),
      (query, mode) => void this.issueQuery(query, mode),
    );
    this.historyPanel = new HistoryPanel(client, this.sessionId, this.keyframes, (query, mode) =>
      void this.issueQuery(query, mode),
    );
    this.overlay = new VideoOverlay(
      client,
      this.keyframes,
      {
        onClosed: (shotId, dwellMs) => void this.recordInspection(shotId, dwellMs),
        onNotFound: (message) => this.toasts.show(message),
      },
      options.now,
    );

    this.tabBar = document.createElement("nav");
    this.tabBar.className = "tab-bar";
    this.tabContents = document.createElement("main");
    this.tabContents.className = "tab-contents";

    const header = document.createElement("header");
    header.className = "app-header";
    header.append(this.searchBar.el, this.banner.el);

    const body = document.createElement("div");
    body.className = "app-body";
    const results = document.createElement("div");
    results.className = "results-column";
    results.append(this.tabBar, this.tabContents);
    body.append(results, this.historyPanel.el);

    this.el = document.createElement("div");
    this.el.className = "app";
    this.el.append(header, body, this.overlay.el, this.toasts.el);

    document.addEventListener("keydown", (event) => this.routeKey(event));
  }

  private routeKey(event: KeyboardEvent): void {
    if (this.overlay.isOpen()) {
      this.overlay.handleKey(event);
      return;
    }
    const target = event.target;
    if (target instanceof HTMLInputElement || target instanceof HTMLSelectElement) return;
    this.activeTab?.navigator?.handleKey(event);
  }

  async issueQuery(query: string, mode: Mode): Promise<void> {
    const seq = this.sequencer.next(mode);
    let page;
    try {
      page =
        mode === "shots"
          ? await this.client.queryShots(query)
          : mode === "map"
            ? await this.client.queryVideos(query)
            : await this.client.queryTemporal(query);
    } catch (error) {
      if (!this.sequencer.isCurrent(mode, seq)) return;
      if (error instanceof ApiError) {
        const where = error.offset !== undefined ? ` (at byte ${error.offset})` : "";
        this.banner.show(`${error.message}${where}`);
      } else {
        this.banner.show("service unreachable — query kept");
      }
      return; // the typed query stays in the input
    }
    if (!this.sequencer.isCurrent(mode, seq)) return;

    this.banner.clear();
    const canonical = page.echo.canonical_query ?? query;
    this.searchBar.setCanonical(canonical);

    let entryId: number | null = null;
    try {
      entryId = (await this.client.recordQuery(this.sessionId, MODE_KINDS[mode], canonical)).entry_id;
    } catch {
      this.banner.show("history recording unavailable");
    }

    const content = document.createElement("section");
    content.className = "tab-content";
    let navigator: MapNavigator | undefined;
    if (mode === "shots") {
      const view = new ShotGridView(
        (page as import("./types.js").ShotPage).results,
        this.client,
        this.keyframes,
        (shotId) => void this.openShot(shotId),
        (q, m) => void this.issueQuery(q, m),
        (message) => this.banner.show(message),
      );
      content.appendChild(view.el);
    } else if (mode === "map") {
      navigator = new MapNavigator(
        (page as import("./types.js").VideoPage).results,
        this.client,
        this.keyframes,
        (shotId) => void this.openShot(shotId),
      );
      content.appendChild(navigator.el);
    } else {
      const view = new TemporalView(
        (page as import("./types.js").TemporalPage).results,
        this.keyframes,
        (shotId) => void this.openShot(shotId),
      );
      content.appendChild(view.el);
    }
    content.prepend(this.modeSwitcher(canonical, mode));

    this.addTab({ mode, canonicalQuery: canonical, entryId, content, navigator });
    await this.historyPanel.refresh();
  }

  /** One click re-runs the same canonical query in a sibling mode, in a new tab. */
  private modeSwitcher(canonical: string, current: Mode): HTMLElement {
    const bar = document.createElement("div");
    bar.className = "mode-switch";
    for (const mode of ["shots", "map", "temporal"] as Mode[]) {
      if (mode === current) continue;
      const button = document.createElement("button");
      button.className = `mode-switch-button to-${mode}`;
      button.textContent = `open as ${mode}`;
      button.addEventListener("click", () => void this.issueQuery(canonical, mode));
      bar.appendChild(button);
    }
    return bar;
  }

  private addTab(init: Omit<Tab, "id" | "button">): void {
    const tab: Tab = { ...init, id: this.nextTabId++, button: document.createElement("button") };
    tab.button.className = "tab-button";
    tab.button.textContent = `${tab.mode}: ${tab.canonicalQuery}`;

    const close = document.createElement("span");
    close.className = "tab-close";
    close.textContent = " ×";
    close.addEventListener("click", (event) => {
      event.stopPropagation();
      this.closeTab(tab);
    });
    tab.button.appendChild(close);
    tab.button.addEventListener("click", () => this.activateTab(tab));

    this.tabs.push(tab);
    this.tabBar.appendChild(tab.button);
    this.tabContents.appendChild(tab.content);
    this.activateTab(tab);
  }

  activateTab(tab: Tab): void {
    this.activeTab = tab;
    for (const t of this.tabs) {
      t.button.classList.toggle("active", t === tab);
      t.content.hidden = t !== tab;
    }
  }

  closeTab(tab: Tab): void {
    const index = this.tabs.indexOf(tab);
    if (index < 0) return;
    this.tabs.splice(index, 1);
    tab.button.remove();
    tab.content.remove();
    if (this.activeTab === tab) {
      const next = this.tabs[Math.min(index, this.tabs.length - 1)];
      this.activeTab = null;
      if (next) this.activateTab(next);
    }
  }

  async openShot(shotId: string): Promise<void> {
    await this.overlay.open(shotId);
  }

  private async recordInspection(shotId: string, dwellMs: number): Promise<void> {
    const entryId = this.activeTab?.entryId;
    if (entryId == null) return; // nothing to attach the inspection to
    try {
      await this.client.recordInspection(
        this.sessionId,
        entryId,
        shotId,
        this.overlay.openedAt(),
        dwellMs,
      );
      await this.historyPanel.refresh();
    } catch {
      this.banner.show("inspection not recorded");
    }
  }
}
