import type { AppContext } from "../app";
import { clear, el } from "../dom";
import type { Finding, ModelInfo, ShareReport } from "../types";

/**
 * Share CTI: pick a model, read its validation report, download the
 * bundle. The verdict and findings are the gateway's, rendered verbatim.
 */
export async function renderShare(ctx: AppContext, selected: string | null): Promise<void> {
  clear(ctx.main);
  const models = await allModels(ctx);

  const select = el("select", { name: "model" },
    el("option", { value: "" }, "— choose a model —"),
    ...models.map((m) => el("option", { value: m.model_id }, m.name)),
  );
  if (selected) select.value = selected;
  select.addEventListener("change", () => {
    ctx.navigate(`#/share?model=${select.value}`);
  });

  ctx.main.append(
    el("div", { class: "page-head" }, el("h1", {}, "Share intelligence")),
    el("div", { class: "card" },
      el("p", {}, "Validating checks every active object for missing required "
        + "parameters before you pass the model on."),
      el("label", {}, "Model", select),
    ),
  );

  if (!selected) return;
  const report = await ctx.api.validateModel(selected);
  ctx.main.append(reportCard(ctx, report));
}

async function allModels(ctx: AppContext): Promise<ModelInfo[]> {
  const models: ModelInfo[] = [];
  let page = 1;
  for (;;) {
    const result = await ctx.api.listModels(page);
    models.push(...result.items);
    if (page >= result.page_count) break;
    page += 1;
  }
  return models;
}

function reportCard(ctx: AppContext, report: ShareReport): HTMLElement {
  const verdict = report.shareable
    ? el("div", { class: "notice info verdict", "data-verdict": "shareable" },
        `Ready to share — ${report.checked_count} object(s) checked, no missing `
        + "required parameters.")
    : el("div", { class: "notice error verdict", "data-verdict": "not-shareable" },
        `Not ready — ${report.checked_count} object(s) checked, `
        + `${report.findings.length} finding(s).`);

  const card = el("section", { class: "card report" }, verdict);

  if (report.findings.length > 0) {
    const byObject = new Map<string, Finding[]>();
    for (const finding of report.findings) {
      if (!byObject.has(finding.object_id)) byObject.set(finding.object_id, []);
      byObject.get(finding.object_id)!.push(finding);
    }
    for (const [objectId, findings] of byObject) {
      card.append(
        el("h3", { class: "mono" }, objectId),
        el("ul", { class: "findings" },
          ...findings.map((finding) =>
            el("li", { "data-property": finding.property },
              el("code", {}, finding.property), ` — ${finding.problem}`)),
        ),
      );
    }
  }

  card.append(
    el("a", {
      href: ctx.api.downloadUrl(report.model_id),
      class: "button",
      download: "",
    }, "Download bundle JSON"),
  );
  return card;
}
