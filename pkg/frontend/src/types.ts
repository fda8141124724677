/** Wire types for the labelloop service (all payloads carry v: 1). */

export interface BatchItem {
  position: number;
  doc_id: string;
  text: string;
  probs: number[];
  predicted: number;
  predicted_label: string;
  confidence: number;
  entropy: number;
  entropy_norm: number;
}

export interface BatchResponse {
  v: number;
  session_id: string;
  round: number;
  batch: BatchItem[];
}

export interface RoundMetrics {
  n_labels: number;
  accuracy: number;
  precision_macro: number;
  recall_macro: number;
  eval_size: number;
  mean_pool_entropy?: number;
}

export interface SessionSummary {
  v: number;
  session_id: string;
  dataset: string;
  round: number;
  labels_used: number;
  budget: number;
  batch_size: number;
  strategy: string;
  protocol: string;
  labels: string[];
  eval_size: number;
  pool_size: number;
  metrics: RoundMetrics;
}

export interface CurveResponse {
  v: number;
  session_id: string;
  curve: RoundMetrics[];
}

export interface AnnotationRow {
  doc_id: string;
  label: string;
}
