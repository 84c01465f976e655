import { ApiClient } from "./api";
import { createApp } from "./app";

const root = document.getElementById("app");
if (root) {
  void createApp(root, new ApiClient("")).catch((err) => {
    root.textContent = `failed to start: ${err}`;
  });
}
