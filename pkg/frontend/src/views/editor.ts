import type { AppContext } from "../app";
import { clear, el } from "../dom";
import { icon } from "../icons";
import type { Definition } from "../types";

const GROUP_LABELS: Record<string, string> = {
  ttp: "Behaviours and resources (TTP-like)",
  adversary: "Adversaries and their organisation",
  ungrouped: "Other objects",
};

/** Model editor: rename, existing objects, picker, live JSON preview. */
export async function renderEditor(ctx: AppContext, modelId: string): Promise<void> {
  clear(ctx.main);
  const detail = await ctx.api.fetchModel(modelId);

  const nameInput = el("input", { name: "name", value: detail.model.name });
  nameInput.value = detail.model.name;
  const renameForm = el(
    "form",
    {
      class: "inline-form",
      onsubmit: async (event) => {
        event.preventDefault();
        await ctx.api.renameModel(modelId, nameInput.value);
        ctx.notice("Model renamed.");
        await ctx.rerender();
      },
    },
    el("label", {}, "Name", nameInput),
    el("button", { type: "submit" }, "Save name"),
  );

  const thumbs = el("div", { class: "thumb-grid" });
  if (detail.objects.length === 0) {
    thumbs.append(el("p", { class: "muted" }, "No objects in this model yet."));
  }
  for (const record of detail.objects) {
    thumbs.append(
      el("a", {
          class: "thumb",
          href: `#/models/${modelId}/objects/${record.record_id}`,
          title: record.summary,
        },
        icon(record.kind),
        el("span", {}, record.summary),
      ),
    );
  }

  // live bundle preview panel
  const previewPane = el("pre", { class: "preview hidden", "data-role": "preview" });
  const previewButton = el(
    "button",
    {
      onclick: async () => {
        if (previewPane.classList.contains("hidden")) {
          const bundle = await ctx.api.preview(modelId);
          previewPane.textContent = JSON.stringify(bundle, null, 2);
          previewPane.classList.remove("hidden");
          previewButton.textContent = "Hide JSON definitions";
        } else {
          previewPane.classList.add("hidden");
          previewButton.textContent = "Preview JSON definitions";
        }
      },
    },
    "Preview JSON definitions",
  );

  ctx.main.append(
    el("div", { class: "page-head" },
      el("h1", {}, `Edit model`),
      el("a", { href: "#/dashboard", class: "linkish" }, "← back to dashboard"),
    ),
    el("section", { class: "card" }, renameForm),
    el("section", { class: "card" },
      el("h2", {}, `Objects in this model (${detail.objects.length})`),
      thumbs,
      previewButton,
      previewPane,
    ),
    pickerSection(ctx, modelId),
  );
}

function pickerSection(ctx: AppContext, modelId: string): HTMLElement {
  const groups = new Map<string, Definition[]>();
  for (const definition of ctx.catalog.definitions) {
    const key = definition.group || "ungrouped";
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push(definition);
  }

  const section = el("section", { class: "card picker" },
    el("h2", {}, "Add a new STIX object"));
  for (const [group, definitions] of groups) {
    section.append(el("h3", {}, GROUP_LABELS[group] ?? group));
    const grid = el("div", { class: "picker-grid" });
    for (const definition of definitions) {
      grid.append(pickerCard(ctx, modelId, definition));
    }
    section.append(grid);
  }
  return section;
}

function pickerCard(ctx: AppContext, modelId: string, definition: Definition): HTMLElement {
  return el(
    "div",
    { class: "picker-card", "data-kind": definition.kind },
    icon(definition.thumbnail),
    el("strong", {}, definition.kind),
    el("span", { class: "tag" }, definition.category),
    el("p", { class: "muted" }, definition.description),
    el("div", { class: "picker-actions" },
      el("a", { href: definition.doc_link, target: "_blank", rel: "noreferrer" }, "Docs"),
      el(
        "button",
        {
          onclick: async () => {
            const record = await ctx.api.addObject(modelId, definition.kind);
            ctx.navigate(`#/models/${modelId}/objects/${record.record_id}`);
          },
        },
        "Add to my model",
      ),
    ),
  );
}
