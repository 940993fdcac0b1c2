import type { ProblemPayload } from "./types.js";

/** View models for the five problem presentations. Pure data in, data out. */

export interface NumericSentenceView {
  kind: "numeric-sentence";
  text: string;
}

export interface SetsView {
  kind: "sets";
  groups: number;
  groupSize: number;
  caption: string;
}

export interface NumberLineView {
  kind: "number-line";
  jumpSize: number;
  jumpCount: number;
  /** Tick positions to draw, matching the server's jump rendering. */
  ticks: number[];
  /** The landing tick stays unlabeled so the answer is not given away. */
  hideFinalLabel: true;
}

export interface SentencePartsView {
  kind: "sentence-parts";
  text: string;
  roles: string[];
}

export interface WordProblemView {
  kind: "word-problem";
  text: string;
}

export type ProblemView =
  | NumericSentenceView
  | SetsView
  | NumberLineView
  | SentencePartsView
  | WordProblemView;

export function problemView(problem: ProblemPayload): ProblemView {
  switch (problem.presentation) {
    case "sets-of-objects": {
      const groups = problem.render.groups ?? 0;
      const groupSize = problem.render.group_size ?? 0;
      return {
        kind: "sets",
        groups,
        groupSize,
        caption: problem.prompt,
      };
    }
    case "number-line": {
      const jumpSize = problem.render.jump_size ?? 0;
      const jumpCount = problem.render.jump_count ?? 0;
      const ticks: number[] = [];
      for (let i = 0; i <= jumpCount; i++) {
        ticks.push(i * jumpSize);
      }
      return {
        kind: "number-line",
        jumpSize,
        jumpCount,
        ticks,
        hideFinalLabel: true,
      };
    }
    case "sentence-parts-query":
      return {
        kind: "sentence-parts",
        text: problem.prompt,
        roles: problem.render.roles ?? [],
      };
    case "word-problem":
      return { kind: "word-problem", text: problem.prompt };
    default:
      return { kind: "numeric-sentence", text: problem.prompt };
  }
}

/** Rows of object icons for the sets presentation. */
export function setsRows(view: SetsView, icon = "⭐"): string[] {
  const rows: string[] = [];
  for (let g = 0; g < view.groups; g++) {
    rows.push(icon.repeat(view.groupSize));
  }
  return rows;
}

/** Labels under number-line ticks; the landing position stays blank. */
export function numberLineLabels(view: NumberLineView): string[] {
  return view.ticks.map((tick, index) =>
    index === view.ticks.length - 1 && index > 0 ? "?" : String(tick),
  );
}

export function formatCountdown(remainingSeconds: number): string {
  const safe = Math.max(0, remainingSeconds);
  return `${safe}s`;
}
