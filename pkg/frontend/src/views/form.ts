import { ApiError } from "../api";
import type { AppContext } from "../app";
import { clear, el } from "../dom";
import { icon } from "../icons";
import type { Definition, PropertyDef, RecordInfo, StixDoc } from "../types";

const STRUCTURAL_KEYS = new Set(["type", "id", "created", "modified"]);

/**
 * Object editor. Widgets derive entirely from the catalog definition of
 * the record's kind — there are no per-kind forms — with the stored
 * values loaded into them. Submitting replaces the full property map.
 */
export async function renderForm(
  ctx: AppContext, modelId: string, recordId: string,
): Promise<void> {
  clear(ctx.main);
  const detail = await ctx.api.fetchModel(modelId);
  const record = detail.objects.find((r) => r.record_id === recordId);
  if (!record) {
    ctx.main.append(el("div", { class: "notice error" }, "No such object in this model."));
    return;
  }
  const definition = ctx.catalog.definitions.find((d) => d.kind === record.kind);
  if (!definition) {
    ctx.main.append(el("div", { class: "notice error" },
      `The catalog has no definition for ${record.kind}.`));
    return;
  }

  const vocabularies = await loadVocabularies(ctx, definition);
  const form = new ObjectForm(ctx, modelId, record, definition, vocabularies);
  ctx.main.append(form.element());
  form.restoreDraft();
}

async function loadVocabularies(
  ctx: AppContext, definition: Definition,
): Promise<Map<string, string[]>> {
  const names = new Set<string>();
  for (const prop of [...definition.common_properties, ...definition.specific_properties]) {
    if (prop.vocabulary) names.add(prop.vocabulary);
  }
  const entries = await Promise.all(
    [...names].map(async (name) => [name, (await ctx.api.vocabulary(name)).entries] as const),
  );
  return new Map(entries);
}

type Collector = () => unknown; // returns undefined for "unset"

class ObjectForm {
  private collectors = new Map<string, Collector>();
  private warningBoxes = new Map<string, HTMLElement>();
  private formError = el("div", { class: "form-error", role: "alert" });
  private root: HTMLElement;
  private draftKey: string;

  constructor(
    private ctx: AppContext,
    private modelId: string,
    private record: RecordInfo,
    private definition: Definition,
    private vocabularies: Map<string, string[]>,
  ) {
    this.draftKey = `ctidesk-draft-${record.record_id}`;
    this.root = this.build();
  }

  element(): HTMLElement {
    return this.root;
  }

  private build(): HTMLElement {
    const definition = this.definition;
    const form = el(
      "form",
      {
        class: "card object-form",
        "data-kind": definition.kind,
        onsubmit: (event) => {
          event.preventDefault();
          void this.save();
        },
        oninput: () => this.saveDraft(),
      },
      el("div", { class: "form-head" },
        icon(definition.thumbnail),
        el("h1", {}, definition.kind),
        el("a", { href: definition.doc_link, target: "_blank", rel: "noreferrer" },
          "Documentation"),
        el("a", { href: `#/models/${this.modelId}`, class: "linkish" }, "← back to model"),
      ),
      el("p", { class: "muted" }, definition.description),
      this.formError,
      this.section("Common properties", definition.common_properties),
      this.section("Specific properties", definition.specific_properties),
      el("button", { type: "submit" }, "Submit"),
    );
    return form;
  }

  private section(title: string, properties: PropertyDef[]): HTMLElement {
    const body = el("div", { class: "section-body" });
    for (const prop of properties) {
      body.append(this.field(prop));
    }
    if (properties.length === 0) {
      body.append(el("p", { class: "muted" }, "None."));
    }
    const toggle = el(
      "button",
      {
        type: "button",
        class: "section-toggle",
        onclick: () => {
          const hidden = body.classList.toggle("hidden");
          toggle.textContent = `${title} — ${hidden ? "View" : "Hide"}`;
        },
      },
      `${title} — Hide`,
    );
    return el("section", { class: "form-section" }, toggle, body);
  }

  private field(prop: PropertyDef): HTMLElement {
    const current = this.record.object[prop.name];
    const warning = el("div", { class: "field-warning" });
    this.warningBoxes.set(prop.name, warning);
    const widget = this.widget(prop, current);
    return el(
      "div",
      { class: "field", "data-prop": prop.name, "data-shape": prop.shape },
      el("label", {},
        el("span", { class: "prop-name" }, prop.name),
        prop.required ? el("span", { class: "req", title: "required" }, " *") : null,
      ),
      widget,
      prop.description ? el("small", { class: "muted" }, prop.description) : null,
      warning,
    );
  }

  private widget(prop: PropertyDef, current: unknown): HTMLElement {
    switch (prop.shape) {
      case "string":
        return this.textInput(prop, current);
      case "vocabulary":
        return this.vocabularyInput(prop, current);
      case "integer":
        return this.numberInput(prop, current);
      case "boolean":
        return this.booleanSelect(prop, current);
      case "timestamp":
        return this.timestampInput(prop, current);
      case "list-of-string":
        return this.listEditor(prop, current);
      default:
        return this.structuredEditor(prop, current);
    }
  }

  private textInput(prop: PropertyDef, current: unknown): HTMLElement {
    const input = el("input", { type: "text", name: prop.name });
    if (typeof current === "string") input.value = current;
    this.collectors.set(prop.name, () => (input.value === "" ? undefined : input.value));
    return input;
  }

  private vocabularyInput(prop: PropertyDef, current: unknown): HTMLElement {
    const listId = `dl-${prop.name}`;
    const input = el("input", { type: "text", name: prop.name, list: listId });
    if (typeof current === "string") input.value = current;
    const datalist = el("datalist", { id: listId },
      ...(this.vocabularies.get(prop.vocabulary ?? "") ?? []).map((entry) =>
        el("option", { value: entry })));
    this.collectors.set(prop.name, () => (input.value === "" ? undefined : input.value));
    return el("span", { class: "vocab-widget" }, input, datalist);
  }

  private numberInput(prop: PropertyDef, current: unknown): HTMLElement {
    const input = el("input", { type: "number", step: "1", name: prop.name });
    if (typeof current === "number") input.value = String(current);
    this.collectors.set(prop.name, () => {
      if (input.value === "") return undefined;
      return Number.parseInt(input.value, 10);
    });
    return input;
  }

  private booleanSelect(prop: PropertyDef, current: unknown): HTMLElement {
    // A plain checkbox cannot express "unset", which clears the property.
    const select = el("select", { name: prop.name },
      el("option", { value: "" }, "(unset)"),
      el("option", { value: "true" }, "true"),
      el("option", { value: "false" }, "false"),
    );
    if (typeof current === "boolean") select.value = String(current);
    this.collectors.set(prop.name, () =>
      select.value === "" ? undefined : select.value === "true");
    return select;
  }

  private timestampInput(prop: PropertyDef, current: unknown): HTMLElement {
    const input = el("input", { type: "datetime-local", step: "1", name: prop.name });
    if (typeof current === "string" && current.length >= 19) {
      input.value = current.slice(0, 19); // RFC 3339 → datetime-local
    }
    this.collectors.set(prop.name, () => {
      if (input.value === "") return undefined;
      const value = input.value.length === 16 ? `${input.value}:00` : input.value;
      return `${value}.000Z`; // entered as UTC, per the GMT-everywhere rule
    });
    return el("span", { class: "ts-widget" }, input, el("small", { class: "muted" }, " UTC"));
  }

  private listEditor(prop: PropertyDef, current: unknown): HTMLElement {
    const listId = prop.vocabulary ? `dl-${prop.name}` : "";
    const rows = el("div", { class: "list-rows" });
    const addRow = (value: string) => {
      const input = el("input", { type: "text" });
      if (listId) input.setAttribute("list", listId);
      input.value = value;
      const row = el("div", { class: "list-row" },
        input,
        el("button", { type: "button", class: "linkish", onclick: () => row.remove() }, "✕"),
      );
      rows.append(row);
    };
    for (const item of Array.isArray(current) ? current : []) {
      if (typeof item === "string") addRow(item);
    }
    const container = el(
      "div",
      { class: "list-editor", "data-prop": prop.name },
      rows,
      el("button", { type: "button", class: "linkish", onclick: () => addRow("") },
        "+ add entry"),
    );
    if (listId) {
      container.append(el("datalist", { id: listId },
        ...(this.vocabularies.get(prop.vocabulary ?? "") ?? []).map((entry) =>
          el("option", { value: entry }))));
    }
    this.collectors.set(prop.name, () => {
      const values = [...rows.querySelectorAll("input")]
        .map((input) => input.value)
        .filter((value) => value !== "");
      return values.length === 0 ? undefined : values;
    });
    return container;
  }

  private structuredEditor(prop: PropertyDef, current: unknown): HTMLElement {
    const area = el("textarea", { name: prop.name, rows: "4", class: "json-editor" });
    if (current !== undefined) area.value = JSON.stringify(current, null, 2);
    this.collectors.set(prop.name, () => {
      if (area.value.trim() === "") return undefined;
      try {
        return JSON.parse(area.value);
      } catch {
        throw new FieldError(prop.name, "not valid JSON");
      }
    });
    return area;
  }

  private collect(): Record<string, unknown> {
    const properties: Record<string, unknown> = {};
    for (const [name, collect] of this.collectors) {
      const value = collect();
      if (value !== undefined) properties[name] = value;
    }
    return properties;
  }

  private async save(): Promise<void> {
    clear(this.formError);
    for (const box of this.warningBoxes.values()) clear(box);
    let properties: Record<string, unknown>;
    try {
      properties = this.collect();
    } catch (failure) {
      if (failure instanceof FieldError) {
        this.warningBoxes.get(failure.property)?.append(failure.message);
        return;
      }
      throw failure;
    }
    try {
      const result = await this.ctx.api.saveProperties(this.record.record_id, properties);
      window.localStorage.removeItem(this.draftKey);
      this.record = result.record;
      for (const warning of result.warnings) {
        this.warningBoxes.get(warning.property)?.append(
          `value outside the ${warning.problem === "not-in-vocabulary" ? "vocabulary" : "rules"}`
          + " — stored, but flagged at share time");
      }
      this.ctx.notice("Saved.");
    } catch (failure) {
      this.formError.append(
        failure instanceof ApiError ? failure.message : String(failure));
    }
  }

  // Unsaved content survives a session-timeout redirect for one reload.
  private saveDraft(): void {
    try {
      const values: Record<string, unknown> = {};
      for (const [name, collect] of this.collectors) {
        try {
          const value = collect();
          if (value !== undefined) values[name] = value;
        } catch {
          /* unfinished JSON field; skip */
        }
      }
      window.localStorage.setItem(this.draftKey, JSON.stringify(values));
    } catch {
      /* storage unavailable */
    }
  }

  restoreDraft(): void {
    const raw = window.localStorage.getItem(this.draftKey);
    if (raw == null) return;
    window.localStorage.removeItem(this.draftKey);
    try {
      const values = JSON.parse(raw) as Record<string, unknown>;
      const stored = { ...this.record.object };
      for (const [name, value] of Object.entries(values)) {
        if (!STRUCTURAL_KEYS.has(name)) stored[name] = value;
      }
      const replacement = new ObjectForm(
        this.ctx, this.modelId, { ...this.record, object: stored as StixDoc },
        this.definition, this.vocabularies);
      this.root.replaceWith(replacement.element());
      this.root = replacement.element();
      this.ctx.notice("Restored unsaved changes from your previous session.");
    } catch {
      /* corrupt draft; ignore */
    }
  }
}

class FieldError extends Error {
  constructor(
    public property: string,
    message: string,
  ) {
    super(message);
  }
}
