import type { ApiClient } from "./api.js";
import type { KeyframeResolver } from "./keyframes.js";
import type { Suggestion } from "./types.js";

const DEBOUNCE_MS = 180;
const THUMBS_PER_ROW = 3;

/** The word being completed: the trailing run of non-space characters. */
export function currentFragment(text: string): string {
  const match = /(\S+)$/.exec(text);
  return match?.[1] ?? "";
}

/** Replace the trailing fragment with the picked term. */
export function insertSuggestion(text: string, suggestion: Suggestion): string {
  const head = text.slice(0, text.length - currentFragment(text).length);
  return `${head}--${suggestion.category} ${suggestion.label} `;
}

export class AutocompleteDropdown {
  readonly el: HTMLUListElement;
  private timer: ReturnType<typeof setTimeout> | undefined;
  private seq = 0;

  constructor(
    private input: HTMLInputElement,
    private client: ApiClient,
    private keyframes: KeyframeResolver,
    private onError: (message: string) => void,
  ) {
    this.el = document.createElement("ul");
    this.el.className = "autocomplete";
    this.el.hidden = true;
    input.autocomplete = "off";
    input.addEventListener("input", () => this.schedule());
    input.addEventListener("blur", () => setTimeout(() => this.hide(), 150));
  }

  private schedule(): void {
    clearTimeout(this.timer);
    const fragment = currentFragment(this.input.value);
    if (!fragment || fragment.startsWith("-")) {
      this.hide();
      return;
    }
    this.timer = setTimeout(() => void this.lookup(fragment), DEBOUNCE_MS);
  }

  private async lookup(fragment: string): Promise<void> {
    const n = ++this.seq;
    try {
      const resp = await this.client.autocomplete(fragment);
      if (n !== this.seq) return; // a newer keystroke owns the dropdown
      if (!resp.suggestions.length) {
        this.hide();
        return;
      }
      this.render(resp.suggestions);
    } catch {
      if (n !== this.seq) return;
      this.onError("autocomplete unavailable: service unreachable");
      this.hide();
    }
  }

  private render(suggestions: Suggestion[]): void {
    this.el.replaceChildren();
    for (const suggestion of suggestions) {
      const li = document.createElement("li");
      li.className = "suggestion";

      const label = document.createElement("span");
      label.className = "suggestion-label";
      label.textContent = suggestion.label;
      const category = document.createElement("span");
      category.className = "suggestion-category";
      category.textContent = suggestion.category;
      const frequency = document.createElement("span");
      frequency.className = "suggestion-frequency";
      frequency.textContent = `${suggestion.shot_frequency}`;
      li.append(label, category, frequency);

      for (const shotId of suggestion.example_shot_ids.slice(0, THUMBS_PER_ROW)) {
        const img = document.createElement("img");
        img.className = "suggestion-thumb";
        img.alt = shotId;
        this.keyframes.fill(img, shotId);
        li.appendChild(img);
      }

      // mousedown beats the input's blur handler
      li.addEventListener("mousedown", (event) => {
        event.preventDefault();
        this.input.value = insertSuggestion(this.input.value, suggestion);
        this.input.focus();
        this.hide();
      });
      this.el.appendChild(li);
    }
    this.el.hidden = false;
  }

  hide(): void {
    this.el.hidden = true;
    this.el.replaceChildren();
  }
}
