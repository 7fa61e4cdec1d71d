/**
 * Pure HTML-string renderers. Keeping rendering as string functions makes
 * every view testable without a browser; the views' only job is to put
 * these strings into the page and wire events.
 *
 * Accessibility defaults: large text and targets, high contrast, and no
 * startling styling — the smoke alert is deliberately calm.
 */
import { OPERATE_ACTIONS, actionEnabled, type OperateAction } from './preconditions.js';
import type { Diagnostic, SessionSnapshot } from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

const ACTION_LABELS: Record<OperateAction, string> = {
  openDoor: 'Open door',
  closeDoor: 'Close door',
  placeLoad: 'Place food',
  removeLoad: 'Take food out',
  confirm: 'Confirm',
  abort: 'Stop',
};

const PHASE_LABELS: Record<SessionSnapshot['phase'], string> = {
  AwaitingUser: 'Your turn',
  Heating: 'Heating',
  HeatingPaused: 'Paused — door is open',
  SmokeHold: 'Stopped — a little smoke was noticed',
  Complete: 'All done!',
  Aborted: 'Stopped',
};

/** Alert banner class: smoke is calm by design, never a klaxon. */
export function alertClass(alert: string): string {
  return alert.startsWith('Smoke') ? 'banner alert-calm' : 'banner alert-notice';
}

export function renderAlerts(alerts: string[]): string {
  return alerts
    .map((a) => `<div class="${alertClass(a)}" role="status">${escapeHtml(a)}</div>`)
    .join('');
}

export function renderActionButtons(snap: SessionSnapshot): string {
  return OPERATE_ACTIONS.map((action) => {
    const enabled = actionEnabled(snap, action);
    return (
      `<button class="action" data-action="${action}"` +
      `${enabled ? '' : ' disabled'}>${escapeHtml(ACTION_LABELS[action])}</button>`
    );
  }).join('');
}

function renderIndicators(snap: SessionSnapshot): string {
  const a = snap.appliance;
  const light = (name: string, on: boolean) =>
    `<span class="indicator ${on ? 'on' : 'off'}">${name}: ${on ? 'on' : 'off'}</span>`;
  return [
    light('Door', a.doorOpen),
    light('Magnetron', a.magnetronOn),
    light('Carousel', a.carouselOn),
    light('Light', a.lightOn),
  ].join('');
}

function renderMedia(snap: SessionSnapshot, mediaUrl: (name: string) => string): string {
  return snap.pendingMedia
    .map((ref) => {
      const url = escapeHtml(mediaUrl(ref.name));
      if (ref.kind === 'image') {
        return `<img class="media" src="${url}" alt="">`;
      }
      if (ref.kind === 'audio') {
        return `<audio class="media" src="${url}" autoplay></audio>`;
      }
      return `<video class="media" src="${url}" autoplay muted></video>`;
    })
    .join('');
}

/**
 * The whole operate view for one snapshot. The rendered phase is always
 * the snapshot's phase: the console performs no transitions of its own.
 */
export function renderOperate(
  snap: SessionSnapshot,
  mediaUrl: (name: string) => string = (name) => `/media/${name}`,
): string {
  const remaining =
    snap.phase === 'Heating' || snap.phase === 'HeatingPaused'
      ? `<p class="remaining">${Math.ceil(snap.remainingMillis / 1000)} s left</p>`
      : '';
  const step = snap.terminal
    ? ''
    : `<p class="step-count">Step ${Math.min(snap.instructionIndex + 1, snap.instructionCount)}` +
      ` of ${snap.instructionCount}</p>`;
  return `
    <section class="operate" data-phase="${snap.phase}" data-revision="${snap.revision}">
      <h2 class="phase phase-${snap.phase}">${PHASE_LABELS[snap.phase]}</h2>
      ${renderAlerts(snap.alerts)}
      ${step}
      <p class="instruction">${escapeHtml(snap.instructionText)}</p>
      ${renderMedia(snap, mediaUrl)}
      ${remaining}
      <div class="indicators">${renderIndicators(snap)}</div>
      <div class="actions">${renderActionButtons(snap)}</div>
    </section>`;
}

/** Diagnostics grouped by path so the author view can place them inline. */
export function groupDiagnostics(diags: Diagnostic[]): Map<string, Diagnostic[]> {
  const grouped = new Map<string, Diagnostic[]>();
  for (const d of diags) {
    const bucket = grouped.get(d.path) ?? [];
    bucket.push(d);
    grouped.set(d.path, bucket);
  }
  return grouped;
}

/**
 * The form row a diagnostic path points at, or null for resource-level
 * diagnostics (e.g. /product/image, /instructionSets/0/id).
 */
export function diagnosticRow(path: string): { set: number; row: number } | null {
  const match = /^\/instructionSets\/(\d+)\/instructions\/(\d+)/.exec(path);
  if (!match) {
    return null;
  }
  return { set: Number(match[1]), row: Number(match[2]) };
}

export function renderDiagnostic(d: Diagnostic): string {
  return (
    `<div class="diagnostic ${d.severity}">` +
    `<span class="rule">${escapeHtml(d.rule)}</span> ` +
    `${escapeHtml(d.message)}</div>`
  );
}
