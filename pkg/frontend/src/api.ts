/**
 * Thin client for the csa-service HTTP API. All console state originates
 * here; nothing is computed locally beyond rendering.
 */
import { NdjsonParser } from './ndjson.js';
import type { Diagnostic, ResourceDoc, SessionSnapshot, ServiceError } from './types.js';

export interface ApiResult<T> {
  ok: boolean;
  status: number;
  body?: T;
  error?: ServiceError;
}

async function decode<T>(response: Response): Promise<ApiResult<T>> {
  const text = await response.text();
  const parsed = text ? JSON.parse(text) : undefined;
  if (response.ok) {
    return { ok: true, status: response.status, body: parsed as T };
  }
  return { ok: false, status: response.status, error: parsed as ServiceError };
}

export class CsaClient {
  constructor(private readonly baseUrl = '') {}

  async putProduct(
    barcode: string,
    canonicalText: string,
  ): Promise<ApiResult<{ revision: number }>> {
    const response = await fetch(`${this.baseUrl}/products/${barcode}`, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: canonicalText,
    });
    return decode(response);
  }

  async getProduct(barcode: string): Promise<ResourceDoc | null> {
    const response = await fetch(`${this.baseUrl}/products/${barcode}`);
    if (!response.ok) {
      return null;
    }
    return (await response.json()) as ResourceDoc;
  }

  async listProducts(category?: string): Promise<
    ApiResult<{ products: { barcode: string; name: string; category: string }[] }>
  > {
    const query = category ? `?category=${encodeURIComponent(category)}` : '';
    return decode(await fetch(`${this.baseUrl}/products${query}`));
  }

  async putMedia(name: string, kind: string, blob: Blob): Promise<ApiResult<unknown>> {
    const response = await fetch(
      `${this.baseUrl}/media/${encodeURIComponent(name)}?kind=${kind}`,
      { method: 'PUT', body: blob },
    );
    return decode(response);
  }

  mediaUrl(name: string): string {
    return `${this.baseUrl}/media/${encodeURIComponent(name)}`;
  }

  async createSession(
    barcode: string,
    abilityLevel: number,
  ): Promise<ApiResult<SessionSnapshot>> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ barcode, abilityLevel }),
    });
    return decode(response);
  }

  async postAction(
    sessionId: string,
    action: Record<string, unknown>,
  ): Promise<ApiResult<SessionSnapshot>> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/actions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(action),
    });
    return decode(response);
  }

  async advanceClock(
    sessionId: string,
    dtMillis: number,
  ): Promise<ApiResult<SessionSnapshot>> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/clock`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ dtMillis }),
    });
    return decode(response);
  }

  /**
   * Consume the server-push snapshot stream; onSnapshot fires once per
   * snapshot, in revision order, until the session reaches a terminal
   * phase or the stream is aborted.
   */
  async streamSnapshots(
    sessionId: string,
    onSnapshot: (snap: SessionSnapshot) => void,
    signal?: AbortSignal,
  ): Promise<void> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/stream`, {
      signal,
    });
    if (!response.ok || response.body === null) {
      throw new Error(`stream failed with status ${response.status}`);
    }
    const reader = response.body.getReader();
    const decoder = new TextDecoder('utf-8');
    const parser = new NdjsonParser<SessionSnapshot>();
    for (;;) {
      const { done, value } = await reader.read();
      if (done) {
        break;
      }
      for (const snap of parser.push(decoder.decode(value, { stream: true }))) {
        onSnapshot(snap);
      }
    }
    for (const snap of parser.end()) {
      onSnapshot(snap);
    }
  }
}

export function isLintFailure(error?: ServiceError): error is ServiceError & {
  diagnostics: Diagnostic[];
} {
  return error?.code === 'LintFailed' && Array.isArray(error.diagnostics);
}
