// Fixed category legend: factual vagueness (V_A, V_G) in blues, subjective
// vagueness (V_D, V_C) in reds.

export const CATEGORY_COLORS: Record<string, string> = {
  VA: "#1d4ed8",
  VG: "#0284c7",
  VD: "#dc2626",
  VC: "#b91c1c",
};

export const CATEGORY_LABELS: Record<string, string> = {
  VA: "V_A approximation",
  VG: "V_G generality",
  VD: "V_D degree",
  VC: "V_C combinatorial",
};

export function categoryColor(category: string): string {
  const color = CATEGORY_COLORS[category];
  if (!color) {
    throw new Error(`unknown trigger category: ${category}`);
  }
  return color;
}

/**
 * Diverging heat color centered at zero: positive scores (biased-leaning)
 * shade red, negative (legitimate-leaning) shade blue. `bound` is the
 * maximum |score| of the response; zero bound renders neutral.
 */
export function heatColor(score: number, bound: number): string {
  if (bound <= 0 || score === 0) {
    return "rgba(0, 0, 0, 0)";
  }
  const intensity = Math.min(1, Math.abs(score) / bound);
  const alpha = (0.85 * intensity).toFixed(3);
  return score > 0 ? `rgba(220, 38, 38, ${alpha})` : `rgba(37, 99, 235, ${alpha})`;
}
