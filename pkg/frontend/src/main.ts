import { boot } from "./app.js";

// Same-origin by default; override with ?api=http://host:port for a service
// running elsewhere (CORS is enabled server-side).
const params = new URLSearchParams(window.location.search);
boot(document, params.get("api") ?? "");
