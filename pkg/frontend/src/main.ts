import { ApiClient, ApiError, ServiceUnreachableError } from "./api.js";
import { PlayController } from "./play.js";
import {
  formatCountdown,
  numberLineLabels,
  problemView,
  setsRows,
} from "./render.js";
import { AppStore } from "./state.js";
import type { FinalizeResponse, StoreItemPayload, TopicEntry } from "./types.js";

const api = new ApiClient("");
const store = new AppStore();
const play = new PlayController(api, store);

const root = document.getElementById("app") as HTMLElement;
let tickHandle: number | null = null;
let lastFinalize: FinalizeResponse | null = null;
let tipText = "";
let musicOscillator: { stop: () => void } | null = null;

function el(tag: string, className = "", text = ""): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

async function guard<T>(action: () => Promise<T>): Promise<T | null> {
  try {
    return await action();
  } catch (error) {
    if (error instanceof ServiceUnreachableError) {
      store.serviceUnreachable("The game server is taking a nap. Try again!");
      render();
      return null;
    }
    throw error;
  }
}

function settingsPanel(): HTMLElement {
  const panel = el("div", "settings");
  const volume = el("button", "chip", store.settings.volumeOn ? "Sound: on" : "Sound: off");
  volume.onclick = () => {
    store.toggleVolume();
    render();
  };
  const music = el("button", "chip", store.settings.musicOn ? "Music: on" : "Music: off");
  music.onclick = () => {
    store.toggleMusic();
    updateMusic();
    render();
  };
  panel.append(volume, music);
  return panel;
}

/** Placeholder looping hum; one oscillator is the whole soundtrack. */
function updateMusic(): void {
  if (store.settings.musicOn && musicOscillator === null) {
    try {
      const context = new AudioContext();
      const oscillator = context.createOscillator();
      const gain = context.createGain();
      gain.gain.value = 0.02;
      oscillator.frequency.value = 220;
      oscillator.connect(gain).connect(context.destination);
      oscillator.start();
      musicOscillator = { stop: () => { oscillator.stop(); context.close(); } };
    } catch {
      musicOscillator = null;
    }
  } else if (!store.settings.musicOn && musicOscillator !== null) {
    musicOscillator.stop();
    musicOscillator = null;
  }
}

function renderRegistration(): void {
  const card = el("div", "card");
  card.append(el("h1", "", "Math Quest"));
  card.append(el("p", "", "Tell us your name to start your adventure!"));
  const form = el("form") as HTMLFormElement;
  const name = el("input") as HTMLInputElement;
  name.placeholder = "Your name";
  name.id = "name-input";
  const grade = el("input") as HTMLInputElement;
  grade.type = "number";
  grade.value = "2";
  grade.min = "1";
  grade.max = "6";
  const submit = el("button", "primary", "Start!") as HTMLButtonElement;
  form.append(name, grade, submit);
  form.onsubmit = (event) => {
    event.preventDefault();
    void guard(async () => {
      const profile = await api.register(name.value, Number(grade.value));
      store.completeRegistration(profile);
      await refreshMapData();
      render();
    });
  };
  card.append(form);
  root.replaceChildren(card, settingsPanel());
}

async function refreshMapData(): Promise<void> {
  if (store.learner === null) return;
  const [topics, wallet, messages] = await Promise.all([
    api.learnerTopics(store.learner.learner_id),
    api.wallet(store.learner.learner_id),
    api.messages(),
  ]);
  store.setTopics(topics.topics);
  store.applyWallet(wallet);
  tipText = messages.messages["tip"] ?? "";
}

function renderWorldMap(): void {
  const card = el("div", "card");
  card.append(el("h1", "", `Welcome, ${store.learner?.display_name ?? ""}!`));
  card.append(el("p", "tickets", `Tickets: ${store.wallet?.balance ?? 0}`));
  const map = el("div", "map");
  const areas: Array<[string, Parameters<AppStore["openArea"]>[0]]> = [
    ["Lesson Area", "lesson-area"],
    ["Multimedia Area", "multimedia-area"],
    ["Activity Area", "activity-area"],
    ["Store Area", "store-area"],
  ];
  for (const [label, area] of areas) {
    const tile = el("button", "area-tile", label);
    tile.onclick = () => {
      store.openArea(area);
      render();
    };
    map.append(tile);
  }
  card.append(map);
  if (tipText) card.append(el("p", "tip", `Tip: ${tipText}`));
  root.replaceChildren(card, settingsPanel());
}

function topicTile(topic: TopicEntry, onPick: (topic: TopicEntry) => void): HTMLElement {
  const tile = el("button", "topic-tile") as HTMLButtonElement;
  tile.append(el("span", "topic-lesson", topic.lesson));
  tile.append(el("span", "topic-title", topic.title));
  if (topic.unlocked) {
    tile.onclick = () => onPick(topic);
  } else {
    tile.disabled = true;
    tile.classList.add("locked");
    tile.append(el("span", "lock-hint", store.lockHint(topic.code)));
  }
  return tile;
}

function renderLessonArea(): void {
  const card = el("div", "card");
  card.append(el("h1", "", "Lessons and Progress"));
  const list = el("div", "topic-list");
  for (const topic of store.topics) {
    const row = el("div", topic.unlocked ? "progress-row" : "progress-row locked");
    row.append(el("span", "", topic.title));
    row.append(el("span", "badge", topic.unlocked ? "unlocked" : "locked"));
    list.append(row);
  }
  card.append(list);
  const reportButton = el("button", "", "Show my report card");
  const reportBox = el("pre", "report");
  reportButton.onclick = () => {
    void guard(async () => {
      reportBox.textContent = await api.report(store.learner!.learner_id);
    });
  };
  card.append(reportButton, reportBox, backButton());
  root.replaceChildren(card, settingsPanel());
}

function renderMultimediaArea(): void {
  const card = el("div", "card");
  card.append(el("h1", "", "Multimedia Area"));
  card.append(el("p", "", "Pick a topic to watch how it works."));
  const box = el("div", "explainer");
  const list = el("div", "topic-list");
  for (const topic of store.topics) {
    const tile = el("button", "topic-tile", topic.title);
    tile.onclick = () => {
      void guard(async () => {
        const explainer = await api.explainer(topic.code);
        box.replaceChildren(
          el("h2", "", explainer.title),
          el("p", "", explainer.body),
          el("p", "sample", `Try one: ${explainer.sample_prompt}`),
        );
      });
    };
    list.append(tile);
  }
  card.append(list, box, backButton());
  root.replaceChildren(card, settingsPanel());
}

function renderActivityArea(): void {
  const card = el("div", "card");
  card.append(el("h1", "", "Activity Area"));
  card.append(el("p", "", "Pick an unlocked topic and beat the timer!"));
  const list = el("div", "topic-list");
  for (const topic of store.topics) {
    list.append(
      topicTile(topic, (picked) => {
        void guard(async () => {
          await play.start(store.learner!.learner_id, picked.code);
          render();
          startTicking();
        });
      }),
    );
  }
  card.append(list, backButton());
  root.replaceChildren(card, settingsPanel());
}

function renderStoreArea(): void {
  const card = el("div", "card");
  card.append(el("h1", "", "Store Area"));
  card.append(el("p", "tickets", `Tickets: ${store.wallet?.balance ?? 0}`));
  if (store.storeNotice) card.append(el("p", "notice", store.storeNotice));
  const list = el("div", "store-list");
  const items = store.catalog;
  for (const item of items) {
    list.append(storeRow(item));
  }
  if (items.length === 0) {
    void guard(async () => {
      const catalog = await api.catalog();
      store.catalog = catalog.items;
      render();
    });
  }
  card.append(list, backButton());
  root.replaceChildren(card, settingsPanel());
}

function storeRow(item: StoreItemPayload): HTMLElement {
  const row = el("div", "store-row");
  row.append(el("span", "", `${item.name} (${item.price_tickets} tickets)`));
  const buy = el("button", "", "Swap tickets") as HTMLButtonElement;
  buy.onclick = () => {
    void guard(async () => {
      try {
        const result = await api.purchase(store.learner!.learner_id, item.item_id);
        store.applyWallet(result.wallet);
        store.storeNotice = `You got the ${item.name}!`;
      } catch (error) {
        if (error instanceof ApiError && error.status === 409) {
          store.storeNotice = "Not enough tickets yet. Play more activities!";
        } else {
          throw error;
        }
      }
      render();
    });
  };
  row.append(buy);
  return row;
}

function startTicking(): void {
  stopTicking();
  tickHandle = window.setInterval(() => {
    const timer = play.timer;
    if (timer === null) return;
    const display = document.getElementById("countdown");
    if (display) display.textContent = formatCountdown(timer.remainingSeconds());
    if (timer.pollExpiry()) {
      void guard(async () => {
        await play.submitTimeout();
        render();
      });
    }
  }, 250);
}

function stopTicking(): void {
  if (tickHandle !== null) {
    window.clearInterval(tickHandle);
    tickHandle = null;
  }
}

function renderProblem(container: HTMLElement): void {
  const problem = store.session?.problem;
  if (!problem) return;
  const view = problemView(problem);
  if (view.kind === "sets") {
    container.append(el("p", "prompt", view.caption));
    for (const row of setsRows(view)) {
      container.append(el("div", "sets-row", row));
    }
  } else if (view.kind === "number-line") {
    container.append(el("p", "prompt", store.session!.problem!.prompt));
    const line = el("div", "number-line");
    const labels = numberLineLabels(view);
    view.ticks.forEach((_, index) => {
      const tick = el("button", "tick", labels[index]) as HTMLButtonElement;
      tick.onclick = () => {
        const input = document.getElementById("answer-input") as HTMLInputElement;
        if (input && index > 0) input.value = String(view.ticks[index]);
      };
      line.append(tick);
      if (index < view.ticks.length - 1) line.append(el("span", "jump", "→"));
    });
    container.append(line);
  } else if (view.kind === "sentence-parts") {
    container.append(el("p", "prompt", view.text));
    container.append(el("p", "roles", `Parts: ${view.roles.join(", ")}`));
  } else {
    container.append(el("p", "prompt", view.text));
  }
}

function renderPlay(): void {
  const session = store.session;
  if (session === null) {
    renderWorldMap();
    return;
  }
  const card = el("div", "card");
  card.append(el("h1", "", session.topic_title));
  const status = el("div", "status-bar");
  status.append(el("span", "stage", `Stage: ${session.stage}`));
  status.append(
    el("span", "tally", `Correct: ${store.tally.correct} / ${store.tally.asked}`),
  );
  status.append(el("span", "", `Left: ${session.remaining}`));
  const countdown = el("span", "", formatCountdown(play.timer?.remainingSeconds() ?? 0));
  countdown.id = "countdown";
  status.append(countdown);
  card.append(status);

  if (store.feedback) card.append(el("p", "feedback", store.feedback));

  if (session.problem !== null) {
    const problemBox = el("div", "problem");
    renderProblem(problemBox);
    card.append(problemBox);
    const form = el("form") as HTMLFormElement;
    const input = el("input") as HTMLInputElement;
    input.type = "number";
    input.id = "answer-input";
    input.disabled = !play.inputEnabled;
    const submit = el("button", "primary", "Answer!") as HTMLButtonElement;
    submit.disabled = !play.inputEnabled;
    form.append(input, submit);
    form.onsubmit = (event) => {
      event.preventDefault();
      if (input.value === "") return;
      void guard(async () => {
        await play.submit(Number(input.value));
        render();
      });
    };
    card.append(form);
  } else if (play.stageComplete) {
    const next = el("button", "primary", "Next stage!");
    next.onclick = () => {
      void guard(async () => {
        await play.advanceStage();
        render();
        startTicking();
      });
    };
    card.append(next);
  } else if (session.finished) {
    stopTicking();
    const finish = el("button", "primary", "See my score!");
    finish.onclick = () => {
      void guard(async () => {
        lastFinalize = await play.finalize();
        await refreshMapData();
        render();
      });
    };
    card.append(finish);
  }
  root.replaceChildren(card, settingsPanel());
}

function renderResults(): void {
  const card = el("div", "card");
  card.append(el("h1", "", "Results"));
  if (lastFinalize) {
    const record = lastFinalize.record;
    card.append(el("p", "feedback", lastFinalize.message));
    const table = el("div", "score-table");
    table.append(el("div", "", `Preparatory: ${record.preparatory_percent}%`));
    table.append(el("div", "", `Developmental: ${record.developmental_percent}%`));
    table.append(el("div", "", `Evaluation: ${record.evaluation_percent}%`));
    table.append(el("div", "remark", record.remark));
    card.append(table);
    card.append(el("p", "tickets", `Tickets earned: ${lastFinalize.tickets_awarded}`));
    card.append(el("p", "tickets", `Balance: ${store.wallet?.balance ?? 0}`));
  }
  const back = el("button", "primary", "Back to the map");
  back.onclick = () => {
    store.backToMap();
    render();
  };
  card.append(back);
  root.replaceChildren(card, settingsPanel());
}

function renderRetry(): void {
  const card = el("div", "card");
  card.append(el("h1", "", "Connection hiccup"));
  card.append(el("p", "", store.lastError));
  const retry = el("button", "primary", "Try again");
  retry.onclick = () => {
    store.retryResolved();
    render();
  };
  card.append(retry);
  root.replaceChildren(card, settingsPanel());
}

function backButton(): HTMLElement {
  const back = el("button", "", "Back to the map");
  back.onclick = () => {
    store.backToMap();
    render();
  };
  return back;
}

function render(): void {
  switch (store.screen) {
    case "registration":
      renderRegistration();
      break;
    case "world-map":
      renderWorldMap();
      break;
    case "lesson-area":
      renderLessonArea();
      break;
    case "multimedia-area":
      renderMultimediaArea();
      break;
    case "activity-area":
      renderActivityArea();
      break;
    case "store-area":
      renderStoreArea();
      break;
    case "play":
      renderPlay();
      break;
    case "results":
      renderResults();
      break;
    case "retry":
      renderRetry();
      break;
  }
}

store.visit();
render();
