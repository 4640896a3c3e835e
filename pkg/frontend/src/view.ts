import type { LineView, OptionView } from "./types.js";

// Pure helpers between service JSON and what the DOM shows.  Keeping
// them side-effect free makes the token-identity and grouping tests
// independent of rendering details.

export interface OptionGroup {
  label: string;
  options: OptionView[];
}

/** Group options by axiom label, preserving the service's order within
 * and across groups. */
export function groupOptions(options: OptionView[]): OptionGroup[] {
  const groups: OptionGroup[] = [];
  const byLabel = new Map<string, OptionGroup>();
  for (const option of options) {
    let group = byLabel.get(option.label);
    if (!group) {
      group = { label: option.label, options: [] };
      byLabel.set(option.label, group);
      groups.push(group);
    }
    group.options.push(option);
  }
  return groups;
}

/** Filter by label or by any variable/term text occurring in the
 * conclusion; an empty query keeps everything. */
export function filterOptions(options: OptionView[], query: string): OptionView[] {
  const needle = query.trim().toLowerCase();
  if (!needle) {
    return options;
  }
  return options.filter(
    (o) =>
      o.label.toLowerCase().includes(needle) ||
      o.preview.toLowerCase().includes(needle) ||
      o.refs.some((r) => String(r) === needle),
  );
}

/** The whitespace-delimited token sequence of the proof table: line
 * number, statement, connection list (derived lines only), annotation.
 * Matches tokenising the text listing. */
export function tableTokens(lines: LineView[]): string[] {
  const tokens: string[] = [];
  for (const line of lines) {
    tokens.push(String(line.number), line.statement);
    if (line.connection) {
      tokens.push(line.connection);
    }
    if (line.annotation) {
      tokens.push(line.annotation);
    }
  }
  return tokens;
}

export function connectionText(option: OptionView): string {
  return `[${[option.label, ...option.refs.map(String)].join(",")}]`;
}
