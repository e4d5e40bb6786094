// Wire types mirroring the service's documented JSON schemas.

export interface RatioJson {
  num: number;
  den: number;
  value: number;
}

export interface TriggerJson {
  surface: string;
  category: "VA" | "VG" | "VD" | "VC";
  span: [number, number]; // (first token index, token count)
  char_span: [number, number]; // codepoint offsets into the submitted text
}

export interface SentenceJson {
  text_span: [number, number];
  text: string | null;
  n_words: number;
  triggers: TriggerJson[];
  r_vague: RatioJson;
  r_subjective: RatioJson;
}

export interface AnalyzeResponse {
  language: string;
  language_detected: boolean;
  n_sentences: number;
  r_vague: RatioJson;
  r_subjective: RatioJson;
  sentences: SentenceJson[];
  barometers: { vague_pct: number; opinion_pct: number };
}

export interface ClassifyResponse {
  bias_score: number;
  tokens: string[];
  cam_scores: number[];
  char_spans: [number, number][];
}

export interface HealthResponse {
  status: string;
  lexicon_counts: Record<string, Record<string, number>>;
  model_loaded: boolean;
  max_input_chars: number;
}
