/** Wire types for the practice service. Field names match the JSON bodies. */

export interface LearnerProfile {
  learner_id: string;
  display_name: string;
  grade_level: number;
  registered_at: string;
}

export interface TopicEntry {
  code: string;
  title: string;
  lesson: string;
  ordinal: number;
  unlocked?: boolean;
}

export interface ProblemRender {
  groups?: number;
  group_size?: number;
  jump_size?: number;
  jump_count?: number;
  roles?: string[];
}

export interface ProblemPayload {
  prompt: string;
  presentation: string;
  topic: string;
  render: ProblemRender;
}

export interface SessionPayload {
  session_id: string;
  learner_id: string;
  topic: string;
  topic_title: string;
  stage: string;
  remaining: number;
  asked: number;
  correct: number;
  finished: boolean;
  time_limit_seconds: number;
  problem: ProblemPayload | null;
}

export interface AnswerResponse extends SessionPayload {
  event: "correct" | "incorrect" | "timeout";
  message: string;
  stage_complete: boolean;
}

export interface WalletPayload {
  learner_id: string;
  earned: number;
  spent: number;
  balance: number;
}

export interface ScoreRecordPayload {
  date: string;
  learner_name: string;
  lesson: string;
  topic: string;
  preparatory_percent: number;
  developmental_percent: number;
  evaluation_percent: number;
  remark: "Passed" | "Failed";
}

export interface FinalizeResponse {
  session_id: string;
  record: ScoreRecordPayload;
  tickets_awarded: number;
  wallet: WalletPayload;
  message: string;
}

export interface StoreItemPayload {
  item_id: string;
  name: string;
  price_tickets: number;
}

export interface PurchaseResponse {
  item_id: string;
  wallet: WalletPayload;
}

export interface ExplainerPayload {
  topic: string;
  title: string;
  lesson: string;
  body: string;
  sample_prompt: string;
  sample_answer: number;
  illustrations?: {
    repeated_subtraction?: number[];
    inverse_multiplication?: string;
  };
}
