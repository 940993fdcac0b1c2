import { describe, expect, it } from "vitest";

import {
  formatCountdown,
  numberLineLabels,
  problemView,
  setsRows,
} from "../src/render.js";
import type { ProblemPayload } from "../src/types.js";

function payload(presentation: string, render: ProblemPayload["render"], prompt = "p"): ProblemPayload {
  return { prompt, presentation, topic: "t", render };
}

describe("problemView", () => {
  it("passes numeric sentences straight through", () => {
    const view = problemView(payload("numeric-sentence", {}, "138 + 520 = ?"));
    expect(view).toEqual({ kind: "numeric-sentence", text: "138 + 520 = ?" });
  });

  it("builds sets rows from server group data", () => {
    const view = problemView(payload("sets-of-objects", { groups: 3, group_size: 4 }));
    expect(view.kind).toBe("sets");
    if (view.kind === "sets") {
      const rows = setsRows(view, "*");
      expect(rows).toEqual(["****", "****", "****"]);
    }
  });

  it("number line ticks match the server jump rendering", () => {
    const view = problemView(payload("number-line", { jump_size: 4, jump_count: 3 }));
    expect(view.kind).toBe("number-line");
    if (view.kind === "number-line") {
      expect(view.ticks).toEqual([0, 4, 8, 12]);
      expect(view.hideFinalLabel).toBe(true);
      // The landing tick is unlabeled so the answer is not shown.
      expect(numberLineLabels(view)).toEqual(["0", "4", "8", "?"]);
    }
  });

  it("sentence parts expose role names only", () => {
    const view = problemView(
      payload("sentence-parts-query", { roles: ["dividend", "divisor", "quotient"] }),
    );
    expect(view).toMatchObject({ kind: "sentence-parts", roles: ["dividend", "divisor", "quotient"] });
  });

  it("word problems show the story text", () => {
    const view = problemView(payload("word-problem", {}, "Mia picked 7 mangoes..."));
    expect(view).toEqual({ kind: "word-problem", text: "Mia picked 7 mangoes..." });
  });
});

describe("formatCountdown", () => {
  it("never shows a negative number", () => {
    expect(formatCountdown(-3)).toBe("0s");
    expect(formatCountdown(0)).toBe("0s");
    expect(formatCountdown(42)).toBe("42s");
  });
});
