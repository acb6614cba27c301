import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";

export const PORT = 8641;
export const BASE_URL = `http://127.0.0.1:${PORT}`;

const here = dirname(fileURLToPath(import.meta.url));
export const REPO_ROOT = resolve(here, "..", "..");
