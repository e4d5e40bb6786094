// Pure HTML renderers. Every number shown comes straight from an API
// response field; nothing is scored or recomputed client-side.

import { categoryColor, CATEGORY_LABELS, heatColor } from "./colors.js";
import type { AnalyzeResponse, SentenceJson } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function gauge(id: string, label: string, pct: number): string {
  return `
    <div class="gauge" id="${id}" data-value="${pct}">
      <div class="gauge-label">${escapeHtml(label)}</div>
      <div class="gauge-track">
        <div class="gauge-fill" style="width: ${pct}%"></div>
      </div>
      <div class="gauge-value">${pct}%</div>
    </div>`;
}

export function renderBarometers(vaguePct: number, opinionPct: number): string {
  return (
    gauge("gauge-vague", "vague ↔ precise", vaguePct) +
    gauge("gauge-opinion", "opinion ↔ factual", opinionPct)
  );
}

/** One sentence with its triggers wrapped in colored <mark> spans. */
export function renderSentence(sentence: SentenceJson, sourceText: string): string {
  const [start, end] = sentence.text_span;
  const text = sentence.text ?? sourceText.slice(start, end);
  const parts: string[] = [];
  let cursor = 0;
  const triggers = [...sentence.triggers].sort(
    (a, b) => a.char_span[0] - b.char_span[0]
  );
  for (const trigger of triggers) {
    const from = trigger.char_span[0] - start;
    const to = trigger.char_span[1] - start;
    if (from < cursor || to > text.length) {
      throw new Error(`trigger span out of sentence bounds: ${trigger.surface}`);
    }
    parts.push(escapeHtml(text.slice(cursor, from)));
    const color = categoryColor(trigger.category);
    const label = CATEGORY_LABELS[trigger.category];
    parts.push(
      `<mark class="trigger cat-${trigger.category}" ` +
        `style="background: ${color}" title="${escapeHtml(label)}">` +
        `${escapeHtml(text.slice(from, to))}` +
        `<sup>${trigger.category}</sup></mark>`
    );
    cursor = to;
  }
  parts.push(escapeHtml(text.slice(cursor)));
  const vague = sentence.r_vague;
  const subj = sentence.r_subjective;
  return (
    `<li class="sentence">` +
    `<span class="sentence-text">${parts.join("")}</span>` +
    `<span class="sentence-ratios">R_vague ${vague.num}/${vague.den} · ` +
    `R_subj ${subj.num}/${subj.den}</span>` +
    `</li>`
  );
}

export function renderSentences(response: AnalyzeResponse, sourceText: string): string {
  const items = response.sentences
    .map((s) => renderSentence(s, sourceText))
    .join("\n");
  return `<ol class="sentences">${items}</ol>`;
}

export function renderLanguageBadge(response: AnalyzeResponse): string {
  const how = response.language_detected ? "detected" : "forced";
  return `<span class="lang-badge" data-lang="${response.language}">${response.language} (${how})</span>`;
}

/**
 * Token heatmap on a diverging scale centered at zero; the scale bound is
 * the response's max |score|. Hover shows the numeric score.
 */
export function renderHeatmap(tokens: string[], camScores: number[]): string {
  if (tokens.length !== camScores.length) {
    throw new Error(
      `token/score arrays misaligned: ${tokens.length} vs ${camScores.length}`
    );
  }
  const bound = camScores.reduce((m, s) => Math.max(m, Math.abs(s)), 0);
  const spans = tokens.map((token, i) => {
    const score = camScores[i];
    return (
      `<span class="heat-token" style="background: ${heatColor(score, bound)}" ` +
      `title="${score.toPrecision(4)}">${escapeHtml(token)}</span>`
    );
  });
  return `<div class="heatmap">${spans.join(" ")}</div>`;
}

export function renderBiasScore(score: number): string {
  const leaning = score >= 0.5 ? "biased" : "legitimate";
  return (
    `<div class="bias-score" data-score="${score}">` +
    `classifier bias score <strong>${score.toFixed(3)}</strong> (${leaning})</div>`
  );
}

export function renderError(message: string): string {
  return `<div class="error-banner">${escapeHtml(message)}</div>`;
}
