import type { AppContext } from "../app";
import { clear, el } from "../dom";
import { icon } from "../icons";
import type { TimelineEntry } from "../types";

/**
 * Chain-of-events view: the profile's records in server order, one colour
 * per model (colour_index comes from the gateway), untimed entries in a
 * trailing section.
 */
export async function renderTimeline(ctx: AppContext): Promise<void> {
  clear(ctx.main);
  const entries = await ctx.api.timeline();

  ctx.main.append(el("div", { class: "page-head" }, el("h1", {}, "Timeline")));
  if (entries.length === 0) {
    ctx.main.append(el("div", { class: "card onboarding" },
      el("p", {}, "Nothing here yet — the timeline fills up as objects in "
        + "your profile's models are modified.")));
    return;
  }

  const timed = entries.filter((entry) => entry.modified_at !== null);
  const untimed = entries.filter((entry) => entry.modified_at === null);

  ctx.main.append(legend(entries));
  const stream = el("ol", { class: "timeline" });
  for (const entry of timed) stream.append(entryItem(entry));
  ctx.main.append(stream);

  if (untimed.length > 0) {
    const tail = el("ol", { class: "timeline untimed" });
    for (const entry of untimed) tail.append(entryItem(entry));
    ctx.main.append(
      el("h2", { class: "untimed-head" }, "Without a modification time"),
      tail,
    );
  }
}

function legend(entries: TimelineEntry[]): HTMLElement {
  const models = new Map<string, TimelineEntry>();
  for (const entry of entries) {
    if (!models.has(entry.model_id)) models.set(entry.model_id, entry);
  }
  const box = el("div", { class: "legend" });
  for (const entry of models.values()) {
    box.append(el("span", { class: `chip colour-${entry.colour_index}` }, entry.model_name));
  }
  return box;
}

function entryItem(entry: TimelineEntry): HTMLElement {
  return el(
    "li",
    { class: `timeline-entry colour-${entry.colour_index}`, "data-record": entry.record_id },
    el("span", { class: "when" }, entry.modified_at ?? "—"),
    icon(entry.object_kind),
    el("span", { class: "summary" }, entry.object_summary),
    el("a", { href: `#/models/${entry.model_id}`, class: `chip colour-${entry.colour_index}` },
      entry.model_name),
  );
}
