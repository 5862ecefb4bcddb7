import type { AppContext } from "../app";
import { clear, el } from "../dom";
import { icon } from "../icons";
import type { ModelInfo, RecordInfo } from "../types";

/** Models and their objects, modification-descending, paginated. */
export async function renderDashboard(ctx: AppContext, page: number): Promise<void> {
  clear(ctx.main);
  const models = await ctx.api.listModels(Number.isFinite(page) && page >= 1 ? page : 1);

  ctx.main.append(
    el("div", { class: "page-head" },
      el("h1", {}, "My dashboard"),
      newModelForm(ctx),
    ),
  );

  if (models.total_count === 0) {
    ctx.main.append(
      el("div", { class: "card onboarding" },
        el("h2", {}, "No models yet"),
        el("p", {},
          "Create your first model above, then add STIX objects to it as "
          + "evidence comes in. Everyone in your profile ("
          + ctx.user.profile + ") will see it."),
      ),
    );
    return;
  }

  const list = el("div", { class: "model-list" });
  for (const model of models.items) {
    list.append(modelCard(ctx, model));
  }
  ctx.main.append(list, pager(models.page_index, models.page_count,
    (p) => ctx.navigate(`#/dashboard?page=${p}`)));
}

function newModelForm(ctx: AppContext): HTMLElement {
  const name = el("input", { name: "model-name", placeholder: "New model name" });
  return el(
    "form",
    {
      class: "inline-form",
      onsubmit: async (event) => {
        event.preventDefault();
        if (!name.value.trim()) return;
        const model = await ctx.api.createModel(name.value.trim());
        ctx.navigate(`#/models/${model.model_id}`);
      },
    },
    name,
    el("button", { type: "submit" }, "Create model"),
  );
}

function modelCard(ctx: AppContext, model: ModelInfo): HTMLElement {
  const objectsBox = el("div", { class: "objects-box" });
  let expanded = false;

  const toggle = el(
    "button",
    {
      class: "linkish",
      onclick: async () => {
        expanded = !expanded;
        toggle.textContent = expanded ? "Hide objects" : "View/Add objects";
        clear(objectsBox);
        if (expanded) await showObjects(ctx, model, objectsBox, 1);
      },
    },
    "View/Add objects",
  );

  return el(
    "div",
    { class: "card model-card", "data-model": model.model_id },
    el("div", { class: "model-row" },
      el("strong", {}, model.name),
      el("span", { class: "muted" }, `modified ${model.modified_at}`),
      toggle,
      el("a", { href: `#/models/${model.model_id}`, class: "linkish" }, "Edit model"),
    ),
    objectsBox,
  );
}

async function showObjects(
  ctx: AppContext, model: ModelInfo, box: HTMLElement, page: number,
): Promise<void> {
  clear(box);
  const records = await ctx.api.listObjects(model.model_id, page);
  if (records.total_count === 0) {
    box.append(el("p", { class: "muted" },
      "No objects yet — use Edit model to add some."));
    return;
  }
  const table = el("div", { class: "object-rows" });
  for (const record of records.items) {
    table.append(objectRow(ctx, model, record));
  }
  box.append(table, pager(records.page_index, records.page_count,
    (p) => showObjects(ctx, model, box, p)));
}

function objectRow(ctx: AppContext, model: ModelInfo, record: RecordInfo): HTMLElement {
  const row = el("div", { class: "object-row", "data-record": record.record_id });

  const render = (current: RecordInfo) => {
    clear(row);
    row.classList.toggle("retracted", current.retracted);
    const flipLink = el(
      "button",
      {
        class: "linkish",
        onclick: async () => {
          // Round-trip first, then update this row in place — no reload.
          const updated = current.retracted
            ? await ctx.api.restore(current.record_id)
            : await ctx.api.retract(current.record_id);
          render(updated);
        },
      },
      current.retracted ? "Restore" : "Retract",
    );
    row.append(
      icon(current.kind),
      el("span", { class: "summary" }, current.summary),
      el("span", { class: "muted" },
        current.modified_at ? `modified ${current.modified_at}` : "never modified"),
      current.retracted
        ? el("span", { class: "tag" }, "retracted")
        : el("a", {
            href: `#/models/${model.model_id}/objects/${current.record_id}`,
            class: "linkish",
          }, "Edit"),
      flipLink,
    );
  };

  render(record);
  return row;
}

export function pager(
  pageIndex: number, pageCount: number, go: (page: number) => void,
): HTMLElement {
  const nav = el("nav", { class: "pager", "aria-label": "pagination" });
  const prev = el("button", { class: "linkish", onclick: () => go(pageIndex - 1) }, "‹ prev");
  const next = el("button", { class: "linkish", onclick: () => go(pageIndex + 1) }, "next ›");
  if (pageIndex <= 1) prev.setAttribute("disabled", "");
  if (pageIndex >= pageCount) next.setAttribute("disabled", "");
  nav.append(prev, el("span", {}, `page ${pageIndex} of ${pageCount}`), next);
  return nav;
}
