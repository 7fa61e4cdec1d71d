/**
 * Authoring view: care staff build a product document row by row, with
 * live lint feedback. Submit is disabled until the barcode checksum and
 * required fields pass and the local lint preview has no errors; server
 * diagnostics (the authority) are placed inline by their document path.
 */
import { CsaClient, isLintFailure } from './api.js';
import { isValidBarcode } from './barcode.js';
import {
  buildResource,
  missingFields,
  serializeResource,
  type AuthorForm,
  type DeviceRow,
  type InstructionRow,
  type UserRow,
} from './document.js';
import { hasErrors, lintResource } from './lint.js';
import { diagnosticRow, escapeHtml, groupDiagnostics, renderDiagnostic } from './render.js';
import type { Diagnostic, TransitionEventName } from './types.js';

const EVENT_OPTIONS: TransitionEventName[] = [
  'DoorOpen',
  'DoorClosed',
  'WeightChange',
  'TimerExpired',
  'UserConfirm',
];

function blankUserRow(): UserRow {
  return { kind: 'user', text: '', untilEvent: 'UserConfirm' };
}

function blankDeviceRow(): DeviceRow {
  return { kind: 'device', powerWatts: 800, durationSeconds: 60, carousel: true };
}

export class AuthorView {
  form: AuthorForm = {
    barcode: '',
    name: '',
    category: '',
    imageName: '',
    sets: [{ id: 'guided', abilityLevel: 1, rows: [blankUserRow()] }],
  };
  serverDiagnostics: Diagnostic[] = [];
  statusMessage = '';

  constructor(
    private readonly root: HTMLElement,
    private readonly client: CsaClient,
  ) {}

  /** Local preview diagnostics; the server re-checks on submit. */
  previewDiagnostics(): Diagnostic[] {
    return lintResource(buildResource(this.form));
  }

  submitDisabledReason(): string | null {
    if (!isValidBarcode(this.form.barcode)) {
      return 'Barcode must be 13 digits with a valid check digit';
    }
    const missing = missingFields(this.form);
    if (missing.length > 0) {
      return `Missing: ${missing.join(', ')}`;
    }
    if (hasErrors(this.previewDiagnostics())) {
      return 'Fix the highlighted instruction errors first';
    }
    return null;
  }

  async submit(): Promise<void> {
    this.serverDiagnostics = [];
    const text = serializeResource(buildResource(this.form));
    try {
      const result = await this.client.putProduct(this.form.barcode, text);
      if (result.ok) {
        this.statusMessage = `Saved (revision ${result.body?.revision})`;
      } else if (isLintFailure(result.error)) {
        this.serverDiagnostics = result.error.diagnostics;
        this.statusMessage = 'The service found problems — see the rows below';
      } else {
        this.statusMessage = result.error?.message ?? `Request failed (${result.status})`;
      }
    } catch {
      this.statusMessage = 'Could not reach the service — please retry';
    }
    this.render();
  }

  private rowHtml(setIndex: number, rowIndex: number, row: InstructionRow): string {
    if (row.kind === 'device') {
      return `
        <fieldset class="row device" data-set="${setIndex}" data-row="${rowIndex}">
          <legend>Heating step</legend>
          <label>Power (W)
            <input type="number" data-field="powerWatts" value="${row.powerWatts}">
          </label>
          <label>Duration (s)
            <input type="number" data-field="durationSeconds" value="${row.durationSeconds}">
          </label>
          <label>Rotate plate
            <input type="checkbox" data-field="carousel" ${row.carousel ? 'checked' : ''}>
          </label>
          <div class="row-diagnostics"></div>
        </fieldset>`;
    }
    const options = EVENT_OPTIONS.map(
      (e) => `<option value="${e}" ${e === row.untilEvent ? 'selected' : ''}>${e}</option>`,
    ).join('');
    return `
      <fieldset class="row user" data-set="${setIndex}" data-row="${rowIndex}">
        <legend>User step</legend>
        <label>Text <input type="text" data-field="text" value="${escapeHtml(row.text)}"></label>
        <label>Until <select data-field="untilEvent">${options}</select></label>
        <div class="row-diagnostics"></div>
      </fieldset>`;
  }

  render(): void {
    const grouped = groupDiagnostics([
      ...this.previewDiagnostics(),
      ...this.serverDiagnostics,
    ]);
    const disabledReason = this.submitDisabledReason();
    const setsHtml = this.form.sets
      .map(
        (set, si) => `
        <section class="set" data-set="${si}">
          <label>Set id <input type="text" data-field="setId" value="${escapeHtml(set.id)}"></label>
          <label>Ability level
            <input type="number" data-field="abilityLevel" value="${set.abilityLevel}">
          </label>
          ${set.rows.map((row, ri) => this.rowHtml(si, ri, row)).join('')}
          <button type="button" data-add="user" data-set="${si}">Add user step</button>
          <button type="button" data-add="device" data-set="${si}">Add heating step</button>
        </section>`,
      )
      .join('');
    this.root.innerHTML = `
      <form class="author" novalidate>
        <label>Barcode <input type="text" data-field="barcode"
          value="${escapeHtml(this.form.barcode)}" inputmode="numeric"></label>
        <label>Name <input type="text" data-field="name" value="${escapeHtml(this.form.name)}"></label>
        <label>Category <input type="text" data-field="category"
          value="${escapeHtml(this.form.category)}"></label>
        <label>Image media name <input type="text" data-field="imageName"
          value="${escapeHtml(this.form.imageName)}"></label>
        ${setsHtml}
        <button type="submit" ${disabledReason ? 'disabled' : ''}>Save product</button>
        ${disabledReason ? `<p class="hint">${escapeHtml(disabledReason)}</p>` : ''}
        <p class="status" role="status">${escapeHtml(this.statusMessage)}</p>
        <div class="resource-diagnostics"></div>
      </form>`;
    this.placeDiagnostics(grouped);
    this.wire();
  }

  private placeDiagnostics(grouped: Map<string, Diagnostic[]>): void {
    const resourceLevel = this.root.querySelector('.resource-diagnostics');
    for (const [path, diags] of grouped) {
      const where = diagnosticRow(path);
      const html = diags.map(renderDiagnostic).join('');
      const target = where
        ? this.root.querySelector(
            `.row[data-set="${where.set}"][data-row="${where.row}"] .row-diagnostics`,
          )
        : resourceLevel;
      if (target) {
        target.innerHTML += html;
      }
    }
  }

  private wire(): void {
    const form = this.root.querySelector('form');
    if (!form) return;
    form.addEventListener('submit', (e) => {
      e.preventDefault();
      void this.submit();
    });
    form.addEventListener('change', (e) => {
      this.readField(e.target as HTMLElement);
      this.render();
    });
    form.querySelectorAll('button[data-add]').forEach((button) =>
      button.addEventListener('click', () => {
        const si = Number((button as HTMLElement).dataset['set']);
        const kind = (button as HTMLElement).dataset['add'];
        this.form.sets[si]?.rows.push(
          kind === 'device' ? blankDeviceRow() : blankUserRow(),
        );
        this.render();
      }),
    );
  }

  private readField(el: HTMLElement): void {
    const field = el.dataset['field'];
    if (!field) return;
    const input = el as HTMLInputElement;
    const rowEl = el.closest<HTMLElement>('.row');
    const setEl = el.closest<HTMLElement>('.set');
    if (rowEl) {
      const set = this.form.sets[Number(rowEl.dataset['set'])];
      const row = set?.rows[Number(rowEl.dataset['row'])];
      if (!row) return;
      if (row.kind === 'device') {
        if (field === 'powerWatts') row.powerWatts = Number(input.value);
        if (field === 'durationSeconds') row.durationSeconds = Number(input.value);
        if (field === 'carousel') row.carousel = input.checked;
      } else {
        if (field === 'text') row.text = input.value;
        if (field === 'untilEvent') row.untilEvent = input.value as UserRow['untilEvent'];
      }
    } else if (setEl) {
      const set = this.form.sets[Number(setEl.dataset['set'])];
      if (!set) return;
      if (field === 'setId') set.id = input.value;
      if (field === 'abilityLevel') set.abilityLevel = Number(input.value);
    } else {
      if (field === 'barcode') this.form.barcode = input.value.trim();
      if (field === 'name') this.form.name = input.value;
      if (field === 'category') this.form.category = input.value;
      if (field === 'imageName') this.form.imageName = input.value.trim();
    }
  }
}
