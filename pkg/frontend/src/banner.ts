/** Non-blocking status line for service errors; never steals focus or input. */
export class StatusBanner {
  readonly el: HTMLElement;

  constructor() {
    this.el = document.createElement("div");
    this.el.className = "banner";
    this.el.hidden = true;
  }

  show(message: string): void {
    this.el.textContent = message;
    this.el.hidden = false;
  }

  clear(): void {
    this.el.hidden = true;
    this.el.textContent = "";
  }
}

/** Short-lived toast, used for per-action failures like a missing shot. */
export class ToastHost {
  readonly el: HTMLElement;

  constructor(private ttlMs = 3000) {
    this.el = document.createElement("div");
    this.el.className = "toasts";
  }

  show(message: string): void {
    const toast = document.createElement("div");
    toast.className = "toast";
    toast.textContent = message;
    this.el.appendChild(toast);
    setTimeout(() => toast.remove(), this.ttlMs);
  }
}
