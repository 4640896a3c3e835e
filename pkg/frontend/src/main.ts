import { Client } from "./api.js";
import { ProofApp } from "./app.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}

const app = new ProofApp(root, new Client(""), (id) => {
  window.location.hash = id;
});

const fragment = window.location.hash.replace(/^#/, "");
if (fragment) {
  void app.resume(fragment);
}
