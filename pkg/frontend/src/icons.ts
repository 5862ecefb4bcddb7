// Inline SVG thumbnails keyed by the catalog's thumbnail_ref; kinds
// without a bespoke glyph fall back to the generic one.

const GLYPHS: Record<string, string> = {
  "threat-actor":
    '<circle cx="12" cy="8" r="4"/><path d="M4 21c0-4 3.5-7 8-7s8 3 8 7"/>',
  "attack-pattern":
    '<path d="M4 20 20 4M4 4l5 5M15 15l5 5"/><circle cx="12" cy="12" r="2"/>',
  malware:
    '<circle cx="12" cy="13" r="5"/><path d="M12 8V4M7 10 4 7M17 10l3-3M6 16H3M21 16h-3M8 18l-2 3M16 18l2 3"/>',
  tool:
    '<path d="M14 6a4 4 0 0 0-5 5L4 16a2 2 0 1 0 3 3l5-5a4 4 0 0 0 5-5l-3 3-2-2Z"/>',
  campaign:
    '<path d="M4 11v4M8 9v8M12 6v13M16 9v8M20 11v4"/>',
  "intrusion-set":
    '<circle cx="7" cy="7" r="3"/><circle cx="17" cy="7" r="3"/><circle cx="12" cy="17" r="3"/><path d="M9 9l2 5M15 9l-2 5"/>',
  indicator:
    '<path d="M12 3v18M5 7l7-4 7 4M5 7v6l7 4 7-4V7"/>',
  identity:
    '<rect x="4" y="5" width="16" height="14" rx="2"/><circle cx="9" cy="11" r="2"/><path d="M14 10h5M14 14h5M5 18c.8-2 2.4-3 4-3s3.2 1 4 3"/>',
  relationship:
    '<circle cx="5" cy="12" r="3"/><circle cx="19" cy="12" r="3"/><path d="M8 12h8M13 9l3 3-3 3"/>',
  sighting:
    '<path d="M2 12s4-7 10-7 10 7 10 7-4 7-10 7S2 12 2 12Z"/><circle cx="12" cy="12" r="3"/>',
  vulnerability:
    '<path d="M12 3 3 19h18L12 3Z"/><path d="M12 9v5M12 16.5v.5"/>',
  "observed-data":
    '<ellipse cx="12" cy="6" rx="7" ry="3"/><path d="M5 6v12c0 1.7 3.1 3 7 3s7-1.3 7-3V6"/><path d="M5 12c0 1.7 3.1 3 7 3s7-1.3 7-3"/>',
  generic:
    '<rect x="5" y="3" width="14" height="18" rx="2"/><path d="M9 8h6M9 12h6M9 16h4"/>',
};

export function icon(thumbnailRef: string): HTMLElement {
  const span = document.createElement("span");
  span.className = "icon";
  span.dataset.icon = GLYPHS[thumbnailRef] ? thumbnailRef : "generic";
  span.innerHTML =
    '<svg viewBox="0 0 24 24" fill="none" stroke="currentColor" stroke-width="1.6" ' +
    'stroke-linecap="round" stroke-linejoin="round" aria-hidden="true">' +
    (GLYPHS[thumbnailRef] ?? GLYPHS.generic) +
    "</svg>";
  return span;
}
