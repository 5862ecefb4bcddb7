import { ApiClient, ApiError } from "../api";
import { clear, el } from "../dom";
import type { Account, Catalog } from "../types";

const PROFILES = [
  "Cyber-security managers",
  "Network administrators",
  "Management",
  "Analysts",
  "External users",
];

export async function renderLogin(
  root: HTMLElement,
  api: ApiClient,
  _catalog: Catalog,
  onLogin: (account: Account) => void,
): Promise<void> {
  clear(root);
  const error = el("div", { class: "form-error", role: "alert" });

  const loginUser = el("input", { name: "username", autocomplete: "username" });
  const loginPass = el("input", { name: "password", type: "password" });
  const loginForm = el(
    "form",
    {
      class: "card",
      onsubmit: async (event) => {
        event.preventDefault();
        clear(error);
        try {
          onLogin(await api.login(loginUser.value, loginPass.value));
        } catch (failure) {
          error.append(failure instanceof ApiError ? failure.message : String(failure));
        }
      },
    },
    el("h2", {}, "Sign in"),
    el("label", {}, "Username", loginUser),
    el("label", {}, "Password", loginPass),
    el("button", { type: "submit" }, "Sign in"),
  );

  const regUser = el("input", { name: "new-username" });
  const regPass = el("input", { name: "new-password", type: "password" });
  const regProfile = el(
    "select",
    { name: "profile" },
    ...PROFILES.map((p) => el("option", { value: p }, p)),
  );
  const registerForm = el(
    "form",
    {
      class: "card",
      onsubmit: async (event) => {
        event.preventDefault();
        clear(error);
        try {
          await api.register(regUser.value, regPass.value, regProfile.value);
          onLogin(await api.login(regUser.value, regPass.value));
        } catch (failure) {
          error.append(failure instanceof ApiError ? failure.message : String(failure));
        }
      },
    },
    el("h2", {}, "Register"),
    el("p", { class: "hint" },
      "Users in the same profile see and edit each other's models."),
    el("label", {}, "Username", regUser),
    el("label", {}, "Password (min 8 characters)", regPass),
    el("label", {}, "Profile", regProfile),
    el("button", { type: "submit" }, "Create account"),
  );

  root.append(
    el("div", { class: "login-hero" },
      el("h1", {}, "ctidesk"),
      el("p", {},
        "Model cyber incidents as STIX 2.1 objects, follow the chain of events, "
        + "and validate models before sharing them with your peers."),
    ),
    error,
    el("div", { class: "grid two" }, loginForm, registerForm),
  );
}
