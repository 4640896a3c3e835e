import { ApiError, Client } from "./api.js";
import type { ExtractResponse, OptionsResponse, SessionView } from "./types.js";
import { connectionText, filterOptions, groupOptions, tableTokens } from "./view.js";

/** Single-page proof session driver.
 *
 * Everything shown comes from the service: the proof table renders the
 * session view, the options panel renders GET /options verbatim, and a
 * derivation is applied by posting the option's index back.  One
 * mutation is in flight at a time; apply/undo stay disabled until the
 * response lands.  A stale apply (409) shows a notice and refreshes the
 * options automatically.
 */
export class ProofApp {
  private session: SessionView | null = null;
  private options: OptionsResponse | null = null;
  private theorem: ExtractResponse | null = null;
  private busy = false;
  private filter = "";
  private notice = "";
  private entryError = "";
  private pending: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly client: Client,
    private readonly onSessionId: (id: string) => void = () => {},
  ) {
    this.root.innerHTML = `
      <section id="entry">
        <textarea id="premise-input" rows="3"
          placeholder="[Add([a,b],[c]), Mult([-1,b],[d])]"></textarea>
        <button id="start-button" type="button">Start session</button>
        <div id="entry-error" class="error"></div>
      </section>
      <section id="proof-section" hidden>
        <table id="proof-table"><tbody></tbody></table>
        <div class="controls">
          <button id="undo-button" type="button">Undo</button>
          <button id="extract-button" type="button">Extract theorem</button>
        </div>
        <div id="notice"></div>
      </section>
      <section id="theorem-section" hidden>
        <pre id="theorem-text"></pre>
        <div id="theorem-premises"></div>
      </section>
      <section id="options-section" hidden>
        <input id="option-filter" type="search"
          placeholder="filter by label or variable" />
        <div id="option-groups"></div>
      </section>
    `;
    this.el<HTMLButtonElement>("#start-button").addEventListener("click", () => {
      void this.start(this.el<HTMLTextAreaElement>("#premise-input").value);
    });
    this.el<HTMLButtonElement>("#undo-button").addEventListener("click", () => {
      void this.undoStep();
    });
    this.el<HTMLButtonElement>("#extract-button").addEventListener("click", () => {
      void this.showTheorem();
    });
    this.el<HTMLInputElement>("#option-filter").addEventListener("input", (e) => {
      this.filter = (e.target as HTMLInputElement).value;
      this.renderOptions();
    });
  }

  private el<T extends Element>(selector: string): T {
    const found = this.root.querySelector(selector);
    if (!found) {
      throw new Error(`missing element ${selector}`);
    }
    return found as T;
  }

  /** Resolves when the current action (if any) has finished. */
  settle(): Promise<void> {
    return this.pending;
  }

  get sessionId(): string | null {
    return this.session ? this.session.id : null;
  }

  start(premises: string): Promise<void> {
    return this.run(async () => {
      try {
        this.session = await this.client.createSession(premises);
        this.entryError = "";
        this.notice = "";
        this.theorem = null;
        this.onSessionId(this.session.id);
        this.options = await this.client.getOptions(this.session.id);
      } catch (e) {
        this.session = null;
        this.options = null;
        this.entryError = e instanceof ApiError ? e.detail : String(e);
      }
    });
  }

  resume(id: string): Promise<void> {
    return this.run(async () => {
      try {
        this.session = await this.client.getSession(id);
        this.options = await this.client.getOptions(id);
        this.entryError = "";
      } catch (e) {
        this.entryError = e instanceof ApiError ? e.detail : String(e);
      }
    });
  }

  pick(optionIndex: number): Promise<void> {
    return this.run(async () => {
      if (!this.session || !this.options) {
        return;
      }
      const id = this.session.id;
      try {
        this.session = await this.client.apply(id, optionIndex, this.options.revision);
        this.theorem = null;
        this.notice = "";
      } catch (e) {
        if (e instanceof ApiError && e.status === 409) {
          this.notice = "those options were stale; refreshed";
        } else {
          this.notice = e instanceof ApiError ? e.detail : String(e);
        }
      }
      this.options = await this.client.getOptions(id);
    });
  }

  undoStep(): Promise<void> {
    return this.run(async () => {
      if (!this.session) {
        return;
      }
      const id = this.session.id;
      try {
        this.session = await this.client.undo(id);
        this.theorem = null;
        this.notice = "";
        this.options = await this.client.getOptions(id);
      } catch (e) {
        this.notice = e instanceof ApiError ? e.detail : String(e);
      }
    });
  }

  showTheorem(): Promise<void> {
    return this.run(async () => {
      if (!this.session) {
        return;
      }
      try {
        this.theorem = await this.client.extract(this.session.id);
        this.notice = "";
      } catch (e) {
        this.notice = e instanceof ApiError ? e.detail : String(e);
      }
    });
  }

  private run(action: () => Promise<void>): Promise<void> {
    if (this.busy) {
      return this.pending;
    }
    this.busy = true;
    this.render();
    this.pending = action().finally(() => {
      this.busy = false;
      this.render();
    });
    return this.pending;
  }

  // ---- rendering --------------------------------------------------------

  private render(): void {
    this.el<HTMLElement>("#entry-error").textContent = this.entryError;
    this.el<HTMLButtonElement>("#start-button").disabled = this.busy;
    const proof = this.el<HTMLElement>("#proof-section");
    const optionsSection = this.el<HTMLElement>("#options-section");
    if (!this.session) {
      proof.hidden = true;
      optionsSection.hidden = true;
      this.el<HTMLElement>("#theorem-section").hidden = true;
      return;
    }
    proof.hidden = false;
    optionsSection.hidden = false;
    this.renderTable();
    this.renderOptions();
    this.renderTheorem();
    this.el<HTMLElement>("#notice").textContent = this.notice;
    this.el<HTMLButtonElement>("#undo-button").disabled =
      this.busy || this.session.lines.length <= this.session.premise_count;
    this.el<HTMLButtonElement>("#extract-button").disabled =
      this.busy || this.session.lines.length <= this.session.premise_count;
  }

  private renderTable(): void {
    const body = this.el<HTMLTableSectionElement>("#proof-table tbody");
    body.textContent = "";
    if (!this.session) {
      return;
    }
    const used = new Set(this.theorem ? this.theorem.used : []);
    const redundant = new Set(this.theorem ? this.theorem.redundant : []);
    for (const line of this.session.lines) {
      const row = body.ownerDocument.createElement("tr");
      row.dataset.number = String(line.number);
      row.className = line.connection ? "derived" : "premise";
      if (used.has(line.number)) {
        row.classList.add("used");
      }
      if (redundant.has(line.number)) {
        row.classList.add("redundant");
      }
      const cells = {
        num: String(line.number),
        stmt: line.statement,
        conn: line.connection ?? "",
        annot: line.annotation,
      };
      for (const [kind, text] of Object.entries(cells)) {
        const cell = body.ownerDocument.createElement("td");
        cell.className = kind;
        cell.textContent = text;
        if (kind === "stmt" && redundant.has(line.number)) {
          const badge = body.ownerDocument.createElement("span");
          badge.className = "badge";
          badge.textContent = "redundant";
          cell.append(" ", badge);
        }
        row.append(cell);
      }
      body.append(row);
    }
  }

  private renderOptions(): void {
    const host = this.el<HTMLElement>("#option-groups");
    host.textContent = "";
    if (!this.options) {
      return;
    }
    const doc = host.ownerDocument;
    const visible = filterOptions(this.options.options, this.filter);
    for (const group of groupOptions(visible)) {
      const details = doc.createElement("details");
      details.className = "option-group";
      details.dataset.label = group.label;
      details.open = true;
      const summary = doc.createElement("summary");
      summary.textContent = `${group.label} (${group.options.length})`;
      details.append(summary);
      for (const option of group.options) {
        const row = doc.createElement("div");
        row.className = "option-row";
        if (option.already_derived) {
          row.classList.add("already-derived");
        }
        row.dataset.index = String(option.index);
        row.dataset.connection = connectionText(option);
        row.dataset.conclusion = option.preview;
        const text = doc.createElement("span");
        text.textContent =
          `${connectionText(option)} → ${option.preview}` +
          (option.already_derived ? " (already derived)" : "");
        const button = doc.createElement("button");
        button.type = "button";
        button.className = "apply-button";
        button.textContent = "Apply";
        button.disabled = this.busy;
        button.addEventListener("click", () => {
          void this.pick(option.index);
        });
        row.append(button, " ", text);
        details.append(row);
      }
      host.append(details);
    }
  }

  private renderTheorem(): void {
    const section = this.el<HTMLElement>("#theorem-section");
    if (!this.theorem) {
      section.hidden = true;
      return;
    }
    section.hidden = false;
    this.el<HTMLElement>("#theorem-text").textContent = this.theorem.theorem;
    const host = this.el<HTMLElement>("#theorem-premises");
    host.textContent = "";
    const doc = host.ownerDocument;
    const note = doc.createElement("div");
    note.textContent =
      `premises used: ${this.theorem.used.join(", ") || "none"}` +
      (this.theorem.redundant.length
        ? ` — redundant: ${this.theorem.redundant.join(", ")}`
        : "");
    host.append(note);
  }

  /** Whitespace tokens of the rendered proof table (for tests and
   * copy/paste parity with text listings). */
  tokens(): string[] {
    return this.session ? tableTokens(this.session.lines) : [];
  }
}
