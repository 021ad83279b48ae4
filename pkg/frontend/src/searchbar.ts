import { AutocompleteDropdown } from "./autocomplete.js";
import type { ApiClient } from "./api.js";
import type { KeyframeResolver } from "./keyframes.js";
import type { Mode } from "./types.js";

const MODE_LABELS: Record<Mode, string> = {
  shots: "shots",
  map: "map",
  temporal: "temporal",
};

export class SearchBar {
  readonly el: HTMLElement;
  readonly input: HTMLInputElement;
  readonly modeSelect: HTMLSelectElement;
  readonly dropdown: AutocompleteDropdown;

  constructor(
    client: ApiClient,
    keyframes: KeyframeResolver,
    onError: (message: string) => void,
    private onSubmit: (query: string, mode: Mode) => void,
  ) {
    this.el = document.createElement("div");
    this.el.className = "searchbar";

    this.input = document.createElement("input");
    this.input.type = "text";
    this.input.className = "searchbar-input";
    this.input.placeholder = '--objects car (0.8), person --places raceway';

    this.modeSelect = document.createElement("select");
    this.modeSelect.className = "searchbar-mode";
    for (const mode of Object.keys(MODE_LABELS) as Mode[]) {
      const option = document.createElement("option");
      option.value = mode;
      option.textContent = MODE_LABELS[mode];
      this.modeSelect.appendChild(option);
    }

    this.dropdown = new AutocompleteDropdown(this.input, client, keyframes, onError);

    this.input.addEventListener("keydown", (event) => {
      if (event.key !== "Enter") return;
      const query = this.input.value.trim();
      if (!query) return; // empty input submits nothing
      this.dropdown.hide();
      this.onSubmit(query, this.mode());
    });

    const wrap = document.createElement("div");
    wrap.className = "searchbar-input-wrap";
    wrap.append(this.input, this.dropdown.el);
    this.el.append(wrap, this.modeSelect);
  }

  mode(): Mode {
    return this.modeSelect.value as Mode;
  }

  /** Reflect the service's canonical rendering back into the input. */
  setCanonical(query: string): void {
    this.input.value = query;
  }
}
