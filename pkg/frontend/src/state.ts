import type {
  LearnerProfile,
  SessionPayload,
  StoreItemPayload,
  TopicEntry,
  WalletPayload,
} from "./types.js";

export type Screen =
  | "registration"
  | "world-map"
  | "lesson-area"
  | "multimedia-area"
  | "activity-area"
  | "store-area"
  | "play"
  | "results"
  | "retry";

export interface Settings {
  volumeOn: boolean;
  musicOn: boolean;
}

export interface Tally {
  asked: number;
  correct: number;
}

/**
 * Central client state. Everything numeric shown on screen is copied from
 * the most recent server response; the client never recomputes scores,
 * balances, or correctness on its own.
 */
export class AppStore {
  screen: Screen = "registration";
  settings: Settings = { volumeOn: true, musicOn: false };
  learner: LearnerProfile | null = null;
  topics: TopicEntry[] = [];
  wallet: WalletPayload | null = null;
  catalog: StoreItemPayload[] = [];
  session: SessionPayload | null = null;
  tally: Tally = { asked: 0, correct: 0 };
  feedback = "";
  storeNotice = "";
  lastError = "";
  private screenBeforeRetry: Screen | null = null;

  /** Fresh visitors land on registration; returning learners on the map. */
  visit(): Screen {
    this.screen = this.learner === null ? "registration" : "world-map";
    return this.screen;
  }

  completeRegistration(profile: LearnerProfile): void {
    this.learner = profile;
    this.screen = "world-map";
  }

  openArea(area: "lesson-area" | "multimedia-area" | "activity-area" | "store-area"): void {
    this.screen = area;
  }

  backToMap(): void {
    this.screen = "world-map";
  }

  setTopics(topics: TopicEntry[]): void {
    this.topics = topics;
  }

  isUnlocked(code: string): boolean {
    return this.topics.some((t) => t.code === code && t.unlocked === true);
  }

  /** Hint shown on a disabled topic tile. */
  lockHint(code: string): string {
    const topic = this.topics.find((t) => t.code === code);
    if (!topic || topic.unlocked) return "";
    const previous = this.topics.find((t) => t.ordinal === topic.ordinal - 1);
    return previous
      ? `Pass "${previous.title}" first`
      : "Locked";
  }

  beginPlay(session: SessionPayload): void {
    this.session = session;
    this.tally = { asked: session.asked, correct: session.correct };
    this.feedback = "";
    this.screen = "play";
  }

  /** Mirror the latest server acknowledgment; the only tally update path. */
  applyServerSession(session: SessionPayload, message = ""): void {
    this.session = session;
    this.tally = { asked: session.asked, correct: session.correct };
    if (message) this.feedback = message;
  }

  applyWallet(wallet: WalletPayload): void {
    this.wallet = wallet;
  }

  showResults(): void {
    this.screen = "results";
  }

  /** Transport failure: show the retry screen but keep all state intact. */
  serviceUnreachable(message: string): void {
    if (this.screen !== "retry") {
      this.screenBeforeRetry = this.screen;
    }
    this.lastError = message;
    this.screen = "retry";
  }

  retryResolved(): void {
    this.lastError = "";
    this.screen = this.screenBeforeRetry ?? this.visit();
    this.screenBeforeRetry = null;
  }

  toggleVolume(): void {
    this.settings = { ...this.settings, volumeOn: !this.settings.volumeOn };
  }

  toggleMusic(): void {
    this.settings = { ...this.settings, musicOn: !this.settings.musicOn };
  }
}
