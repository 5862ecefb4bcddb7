// Payload shapes of the gateway's JSON API. The console renders these
// verbatim — every verdict, ordering, and colour index comes from the
// server, never from logic here.

export interface Account {
  username: string;
  role: string;
  profile: string;
  active: boolean;
}

export interface PropertyDef {
  name: string;
  shape: string;
  required: boolean;
  vocabulary: string | null;
  description: string;
}

export interface Definition {
  kind: string;
  category: string;
  group: string;
  description: string;
  doc_link: string;
  thumbnail: string;
  common_properties: PropertyDef[];
  specific_properties: PropertyDef[];
}

export interface Catalog {
  version: string;
  definitions: Definition[];
}

export interface ModelInfo {
  model_id: string;
  name: string;
  profile: string;
  created_at: string;
  modified_at: string;
}

export interface StixDoc {
  type: string;
  id: string;
  [property: string]: unknown;
}

export interface RecordInfo {
  record_id: string;
  model_id: string;
  kind: string;
  summary: string;
  object: StixDoc;
  created_at: string;
  modified_at: string | null;
  retracted: boolean;
}

export interface PageOf<T> {
  items: T[];
  page_index: number;
  page_count: number;
  total_count: number;
  page_size: number;
}

export interface ModelDetail {
  model: ModelInfo;
  objects: RecordInfo[];
}

export interface Finding {
  object_id: string;
  property: string;
  problem: string;
}

export interface ShareReport {
  model_id: string;
  checked_count: number;
  shareable: boolean;
  findings: Finding[];
}

export interface SaveResult {
  record: RecordInfo;
  warnings: Finding[];
}

export interface TimelineEntry {
  record_id: string;
  model_id: string;
  model_name: string;
  object_kind: string;
  object_summary: string;
  modified_at: string | null;
  colour_index: number;
  retracted: boolean;
}
