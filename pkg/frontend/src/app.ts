import { ApiClient } from "./api";
import { clear, el } from "./dom";
import type { Account, Catalog } from "./types";
import { renderDashboard } from "./views/dashboard";
import { renderEditor } from "./views/editor";
import { renderForm } from "./views/form";
import { renderLogin } from "./views/login";
import { renderShare } from "./views/share";
import { renderTimeline } from "./views/timeline";

export interface AppContext {
  api: ApiClient;
  catalog: Catalog;
  user: Account;
  main: HTMLElement;
  navigate(hash: string): void;
  rerender(): Promise<void>;
  notice(message: string, tone?: "info" | "error"): void;
}

/** Shell: session handling, navigation, and the hash router. */
export class App {
  private user: Account | null = null;
  private catalog: Catalog | null = null;
  private main!: HTMLElement;
  private noticeBox!: HTMLElement;
  private displayedHash: string | null = null;
  rendered: Promise<void> = Promise.resolve();

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {}

  async start(): Promise<void> {
    this.api.onSessionLost = () => {
      this.user = null;
      this.navigate("#/login");
    };
    this.catalog = await this.api.catalog();
    try {
      this.user = await this.api.me();
    } catch {
      this.user = null;
    }
    window.addEventListener("hashchange", () => {
      // Only a real change re-renders; the event may arrive late for a
      // hash the shell has already displayed.
      if (window.location.hash !== this.displayedHash) {
        this.rendered = this.render();
      }
    });
    await (this.rendered = this.render());
  }

  navigate(hash: string): void {
    if (window.location.hash === hash) {
      this.rendered = this.render();
    } else {
      window.location.hash = hash; // hashchange listener re-renders
    }
  }

  notice(message: string, tone: "info" | "error" = "info"): void {
    clear(this.noticeBox);
    if (message) {
      this.noticeBox.append(el("div", { class: `notice ${tone}` }, message));
    }
  }

  private context(): AppContext {
    return {
      api: this.api,
      catalog: this.catalog!,
      user: this.user!,
      main: this.main,
      navigate: (hash) => this.navigate(hash),
      rerender: () => (this.rendered = this.render()),
      notice: (message, tone) => this.notice(message, tone),
    };
  }

  private async render(): Promise<void> {
    this.displayedHash = window.location.hash;
    clear(this.root);
    this.noticeBox = el("div", { class: "notices" });

    if (!this.user) {
      this.root.append(this.noticeBox);
      const box = el("main", { class: "container" });
      this.root.append(box);
      await renderLogin(box, this.api, this.catalog!, async (account) => {
        this.user = account;
        this.notice("");
        this.navigate("#/dashboard");
      });
      return;
    }

    this.root.append(this.header(), this.noticeBox);
    this.main = el("main", { class: "container" });
    this.root.append(this.main);

    const ctx = this.context();
    const hash = window.location.hash || "#/dashboard";
    const [path, query] = hash.slice(1).split("?");
    const params = new URLSearchParams(query ?? "");
    const parts = path.split("/").filter(Boolean);

    try {
      if (parts[0] === "login") {
        this.user = null;
        await this.render();
      } else if (parts[0] === "models" && parts[1] && parts[2] === "objects" && parts[3]) {
        await renderForm(ctx, parts[1], parts[3]);
      } else if (parts[0] === "models" && parts[1]) {
        await renderEditor(ctx, parts[1]);
      } else if (parts[0] === "timeline") {
        await renderTimeline(ctx);
      } else if (parts[0] === "share") {
        await renderShare(ctx, params.get("model"));
      } else {
        await renderDashboard(ctx, Number(params.get("page") ?? "1"));
      }
    } catch (error) {
      const message = error instanceof Error ? error.message : String(error);
      this.main.append(el("div", { class: "notice error" }, message));
    }
  }

  private header(): HTMLElement {
    const user = this.user!;
    return el(
      "header",
      { class: "topbar" },
      el("span", { class: "brand" }, "ctidesk"),
      el(
        "nav",
        {},
        el("a", { href: "#/dashboard" }, "My dashboard"),
        el("a", { href: "#/timeline" }, "Timeline"),
        el("a", { href: "#/share" }, "Share CTI"),
      ),
      el(
        "span",
        { class: "whoami" },
        `${user.username} · ${user.profile}`,
        el(
          "button",
          {
            class: "linkish",
            onclick: async () => {
              await this.api.logout();
              this.user = null;
              this.navigate("#/login");
            },
          },
          "Log out",
        ),
      ),
    );
  }
}
