/**
 * Operate view: the kiosk surface. A user enters (or scans) a barcode,
 * a session starts, and from then on the view is a function of the
 * latest streamed snapshot — rendered immediately when it arrives.
 * Buttons are fire-and-confirm: disabled once clicked until the snapshot
 * acknowledging the action is rendered.
 */
import { CsaClient } from './api.js';
import { renderOperate } from './render.js';
import type { OperateAction } from './preconditions.js';
import type { SessionSnapshot } from './types.js';

export class OperateView {
  latest: SessionSnapshot | null = null;
  private awaitingAck = false;
  private abortController: AbortController | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: CsaClient,
  ) {}

  renderBarcodeEntry(message = ''): void {
    this.root.innerHTML = `
      <section class="scan">
        <h2>What would you like to cook?</h2>
        <p>${message ? `<span class="hint">${message}</span>` : 'Scan or type the barcode on the package.'}</p>
        <form class="scan-form">
          <input type="text" inputmode="numeric" autofocus aria-label="Barcode">
          <button type="submit">Start</button>
        </form>
      </section>`;
    const form = this.root.querySelector('form');
    form?.addEventListener('submit', (e) => {
      e.preventDefault();
      const input = form.querySelector('input');
      if (input) {
        void this.start(input.value.trim());
      }
    });
  }

  async start(barcode: string, abilityLevel = 1): Promise<void> {
    const created = await this.client.createSession(barcode, abilityLevel);
    if (!created.ok || !created.body) {
      this.renderBarcodeEntry(
        created.status === 404
          ? 'That product is not known yet — please check the number and try again.'
          : 'Something went wrong — please try again.',
      );
      return;
    }
    this.abortController = new AbortController();
    void this.client.streamSnapshots(
      created.body.sessionId,
      (snap) => this.onSnapshot(snap),
      this.abortController.signal,
    );
  }

  /** Render the snapshot the moment it arrives; no local state machine. */
  onSnapshot(snap: SessionSnapshot): void {
    this.latest = snap;
    this.awaitingAck = false;
    this.root.innerHTML = renderOperate(snap, (name) => this.client.mediaUrl(name));
    this.root.querySelectorAll<HTMLButtonElement>('button[data-action]').forEach((button) =>
      button.addEventListener('click', () => {
        void this.act(button.dataset['action'] as OperateAction);
      }),
    );
    if (this.awaitingAckUi()) {
      this.disableAllActions();
    }
  }

  private awaitingAckUi(): boolean {
    return this.awaitingAck;
  }

  private disableAllActions(): void {
    this.root
      .querySelectorAll<HTMLButtonElement>('button[data-action]')
      .forEach((b) => (b.disabled = true));
  }

  async act(action: OperateAction): Promise<void> {
    if (!this.latest || this.awaitingAck) {
      return;
    }
    this.awaitingAck = true;
    this.disableAllActions();
    const body: Record<string, unknown> =
      action === 'placeLoad'
        ? { action, grams: 300, initialTempC: 20 }
        : { action };
    await this.client.postAction(this.latest.sessionId, body);
    // the acknowledging snapshot arrives via the stream and re-renders
  }

  stop(): void {
    this.abortController?.abort();
    this.abortController = null;
  }
}
