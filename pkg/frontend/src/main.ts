import { ApiClient } from "./api.js";
import { App } from "./app.js";

const api =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";

const app = new App(new ApiClient(api));
document.body.appendChild(app.el);
