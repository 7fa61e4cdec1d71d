/**
 * Entry point: a two-tab shell switching between the Author and Operate
 * views. Served as static files next to the csa-service API.
 */
import { CsaClient } from './api.js';
import { AuthorView } from './authorView.js';
import { OperateView } from './operateView.js';

export function mount(root: HTMLElement): void {
  const client = new CsaClient('');
  root.innerHTML = `
    <nav class="tabs">
      <button data-tab="operate" class="active">Cook</button>
      <button data-tab="author">Author</button>
    </nav>
    <main id="view"></main>`;
  const viewRoot = root.querySelector<HTMLElement>('#view');
  if (!viewRoot) return;
  const author = new AuthorView(viewRoot, client);
  const operate = new OperateView(viewRoot, client);

  const show = (tab: string) => {
    operate.stop();
    if (tab === 'author') {
      author.render();
    } else {
      operate.renderBarcodeEntry();
    }
    root.querySelectorAll('.tabs button').forEach((b) => {
      b.classList.toggle('active', (b as HTMLElement).dataset['tab'] === tab);
    });
  };

  root.querySelectorAll<HTMLButtonElement>('.tabs button').forEach((button) =>
    button.addEventListener('click', () => show(button.dataset['tab'] ?? 'operate')),
  );
  show('operate');
}

if (typeof document !== 'undefined') {
  const root = document.getElementById('app');
  if (root) {
    mount(root);
  }
}
