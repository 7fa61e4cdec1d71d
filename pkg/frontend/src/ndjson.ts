/**
 * Incremental NDJSON decoder for the session snapshot stream.
 *
 * Network chunks can split a JSON line anywhere; the parser buffers the
 * tail and yields only complete lines, in order.
 */
export class NdjsonParser<T> {
  private buffer = '';

  /** Feed one chunk; returns the objects completed by it, in order. */
  push(chunk: string): T[] {
    this.buffer += chunk;
    const out: T[] = [];
    let newline = this.buffer.indexOf('\n');
    while (newline >= 0) {
      const line = this.buffer.slice(0, newline).trim();
      this.buffer = this.buffer.slice(newline + 1);
      if (line.length > 0) {
        out.push(JSON.parse(line) as T);
      }
      newline = this.buffer.indexOf('\n');
    }
    return out;
  }

  /** Flush a final unterminated line at end of stream, if any. */
  end(): T[] {
    const line = this.buffer.trim();
    this.buffer = '';
    return line.length > 0 ? [JSON.parse(line) as T] : [];
  }
}
