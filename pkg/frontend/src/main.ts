import { Client } from "./api.js";
import { App } from "./app.js";

declare global {
  interface Window {
    ANTPATH_BASE_URL?: string;
  }
}

const base = window.ANTPATH_BASE_URL ?? "http://127.0.0.1:8000";
const root = document.getElementById("app");
if (root) {
  void new App(new Client(base), root).init();
}
