// Shapes of the service JSON. The UI renders these verbatim and never
// derives anything on its own.

export interface LineView {
  number: number;
  statement: string;
  connection: string | null;
  label: string | null;
  refs: number[] | null;
  annotation: string;
}

export interface SessionView {
  id: string;
  revision: number;
  premise_count: number;
  lines: LineView[];
  snapshot: unknown;
}

export interface OptionView {
  index: number;
  label: string;
  refs: number[];
  conclusion: string[];
  preview: string;
  already_derived: boolean;
}

export interface OptionsResponse {
  revision: number;
  options: OptionView[];
}

export interface ExtractResponse {
  theorem: string;
  used: number[];
  redundant: number[];
  premises: string[];
  conclusion: string;
}

export interface AxiomEntry {
  label: string;
  kind: string;
  premise?: string[];
  conclusion?: string[];
  schema?: string;
}

export interface AxiomsResponse {
  intprograms: string[];
  entries: AxiomEntry[];
}
