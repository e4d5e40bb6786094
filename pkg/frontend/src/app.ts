// Page wiring: debounced live analysis of the editor content.
//
// Invariants kept here: no request is sent for an empty editor or one over
// the character limit (an inline warning shows instead); responses arriving
// out of order are dropped by sequence number; a service failure shows a
// banner without clearing the last good view.

import { ApiClient, ApiError } from "./client.js";
import {
  renderBarometers,
  renderBiasScore,
  renderError,
  renderHeatmap,
  renderLanguageBadge,
  renderSentences,
} from "./render.js";

export const DEBOUNCE_MS = 400;
export const DEFAULT_MAX_CHARS = 1200;

interface Elements {
  editor: HTMLTextAreaElement;
  charCount: HTMLElement;
  barometers: HTMLElement;
  language: HTMLElement;
  sentences: HTMLElement;
  classifier: HTMLElement;
  banner: HTMLElement;
}

function grab(doc: Document, id: string): HTMLElement {
  const el = doc.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el;
}

export class App {
  private els: Elements;
  private timer: number | undefined;
  private maxChars = DEFAULT_MAX_CHARS;
  private modelLoaded = false;

  constructor(doc: Document, private client: ApiClient) {
    this.els = {
      editor: grab(doc, "editor") as HTMLTextAreaElement,
      charCount: grab(doc, "char-count"),
      barometers: grab(doc, "barometers"),
      language: grab(doc, "language"),
      sentences: grab(doc, "sentences"),
      classifier: grab(doc, "classifier"),
      banner: grab(doc, "banner"),
    };
  }

  async start(): Promise<void> {
    this.els.barometers.innerHTML = renderBarometers(0, 0);
    this.els.editor.addEventListener("input", () => this.onEdit());
    try {
      const health = await this.client.health();
      this.maxChars = health.max_input_chars ?? DEFAULT_MAX_CHARS;
      this.modelLoaded = health.model_loaded;
      this.els.banner.innerHTML = "";
    } catch {
      this.els.banner.innerHTML = renderError("analysis service unreachable");
    }
    this.onEdit();
  }

  private onEdit(): void {
    const text = this.els.editor.value;
    const over = text.length > this.maxChars;
    this.els.charCount.textContent = `${text.length} / ${this.maxChars}`;
    this.els.charCount.classList.toggle("over-limit", over);
    if (this.timer !== undefined) {
      clearTimeout(this.timer);
    }
    if (!text.trim()) {
      // empty editor: gauges at zero, no request
      this.els.barometers.innerHTML = renderBarometers(0, 0);
      this.els.sentences.innerHTML = "";
      this.els.language.innerHTML = "";
      this.els.classifier.innerHTML = "";
      return;
    }
    if (over) {
      this.els.banner.innerHTML = renderError(
        `text is ${text.length} characters; the service accepts at most ${this.maxChars}`
      );
      return;
    }
    this.els.banner.innerHTML = "";
    this.timer = setTimeout(() => {
      void this.refresh(text);
    }, DEBOUNCE_MS) as unknown as number;
  }

  async refresh(text: string): Promise<void> {
    const seq = this.client.nextSeq();
    try {
      const analysis = await this.client.analyze(text);
      if (seq !== this.client.currentSeq()) {
        return; // a newer edit superseded this request
      }
      this.els.barometers.innerHTML = renderBarometers(
        analysis.barometers.vague_pct,
        analysis.barometers.opinion_pct
      );
      this.els.language.innerHTML = renderLanguageBadge(analysis);
      this.els.sentences.innerHTML = renderSentences(analysis, text);
      this.els.banner.innerHTML = "";
    } catch (err) {
      if (seq !== this.client.currentSeq()) {
        return;
      }
      const detail = err instanceof ApiError ? err.message : "analysis request failed";
      this.els.banner.innerHTML = renderError(detail);
      return;
    }
    if (this.modelLoaded) {
      try {
        const clf = await this.client.classify(text);
        if (seq !== this.client.currentSeq()) {
          return;
        }
        this.els.classifier.innerHTML =
          renderBiasScore(clf.bias_score) +
          renderHeatmap(clf.tokens, clf.cam_scores);
      } catch (err) {
        if (seq === this.client.currentSeq()) {
          this.els.classifier.innerHTML = renderError(
            err instanceof Error ? err.message : "classification failed"
          );
        }
      }
    }
  }
}

export function boot(doc: Document, baseUrl = ""): App {
  const app = new App(doc, new ApiClient(baseUrl));
  void app.start();
  return app;
}
