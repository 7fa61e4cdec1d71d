/**
 * End-to-end: the console's client code against a real service instance.
 * Skipped when the backend CLI is not installed on this machine.
 */
import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { CsaClient, isLintFailure } from '../src/api.js';
import { buildResource, serializeResource } from '../src/document.js';
import { actionEnabled } from '../src/preconditions.js';
import type { SessionSnapshot } from '../src/types.js';

const CSA_AVAILABLE = spawnSync('csa', ['--help'], { encoding: 'utf-8' }).status === 0;
const PORT = 8400 + Math.floor(Math.random() * 500);
const BARCODE = '5000111222334';

let server: ChildProcess | null = null;
const client = new CsaClient(`http://127.0.0.1:${PORT}`);

function soupDocument(): string {
  return serializeResource(
    buildResource({
      barcode: BARCODE,
      name: 'Tomato soup',
      category: 'soup',
      imageName: 'soup.png',
      sets: [
        {
          id: 'guided',
          abilityLevel: 1,
          rows: [
            { kind: 'user', text: 'Open the door', untilEvent: 'DoorOpen' },
            {
              kind: 'user',
              text: 'Place the bowl inside',
              untilEvent: 'WeightChange',
              minDeltaGrams: 200,
            },
            { kind: 'user', text: 'Close the door', untilEvent: 'DoorClosed' },
            { kind: 'device', powerWatts: 800, durationSeconds: 30, carousel: true },
            { kind: 'user', text: 'Take the bowl out', untilEvent: 'DoorOpen' },
          ],
        },
      ],
    }),
  );
}

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const result = await client.listProducts();
      if (result.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error('service did not come up');
}

describe.skipIf(!CSA_AVAILABLE)('console against a live service', () => {
  beforeAll(async () => {
    const dataDir = mkdtempSync(join(tmpdir(), 'console-e2e-'));
    server = spawn('csa', ['serve'], {
      env: {
        ...process.env,
        CSA_PORT: String(PORT),
        CSA_HOST: '127.0.0.1',
        CSA_DATA_DIR: dataDir,
        CSA_TIME_SCALE: '0',
      },
      stdio: 'ignore',
    });
    await waitForService();
  }, 20_000);

  afterAll(() => {
    server?.kill();
  });

  it('stores the authoring form output and rejects a dirty variant inline', async () => {
    const saved = await client.putProduct(BARCODE, soupDocument());
    expect(saved.ok, JSON.stringify(saved.error)).toBe(true);

    const dirty = JSON.parse(soupDocument());
    // move the door-open step directly before the heating step
    const steps = dirty.instructionSets[0].instructions;
    steps.splice(2, 0, steps.shift());
    const rejected = await client.putProduct(BARCODE, JSON.stringify(dirty));
    expect(rejected.status).toBe(422);
    expect(isLintFailure(rejected.error)).toBe(true);
    if (isLintFailure(rejected.error)) {
      expect(rejected.error.diagnostics.some((d) => d.rule === 'L1')).toBe(true);
    }
  });

  it('unknown barcode yields a not-found the view can message', async () => {
    const result = await client.createSession('0000000000000', 1);
    expect(result.ok).toBe(false);
    expect(result.status).toBe(404);
  });

  it(
    'drives a session to Complete; every streamed snapshot is ordered and ' +
      'button enablement matches what the service accepts',
    async () => {
      const created = await client.createSession(BARCODE, 1);
      expect(created.ok).toBe(true);
      const sessionId = created.body!.sessionId;

      // a disabled physical action really is refused by the appliance
      expect(actionEnabled(created.body!, 'placeLoad')).toBe(false);
      const refused = await client.postAction(sessionId, {
        action: 'placeLoad',
        grams: 300,
        initialTempC: 20,
      });
      expect(refused.status).toBe(409);

      // happy path; every action we issue is one the view would enable
      let snap = created.body!;
      const inputs: Array<Record<string, unknown>> = [
        { action: 'openDoor' },
        { action: 'placeLoad', grams: 300, initialTempC: 20 },
        { action: 'closeDoor' },
      ];
      for (const input of inputs) {
        if (typeof input['action'] === 'string' && input['action'] !== 'placeLoad') {
          expect(actionEnabled(snap, input['action'] as never), String(input['action'])).toBe(true);
        }
        const result = await client.postAction(sessionId, input);
        expect(result.ok).toBe(true);
        snap = result.body!;
      }
      expect(snap.phase).toBe('Heating');
      await client.advanceClock(sessionId, 31_000);
      const opened = await client.postAction(sessionId, { action: 'openDoor' });
      expect(opened.body!.phase).toBe('Complete');

      // the stream replays the whole history, gap-free and in order
      const streamed: SessionSnapshot[] = [];
      await client.streamSnapshots(sessionId, (s) => streamed.push(s));
      expect(streamed.length).toBeGreaterThanOrEqual(6);
      const revisions = streamed.map((s) => s.revision);
      expect(revisions).toEqual(
        Array.from({ length: revisions.length }, (_, i) => revisions[0]! + i),
      );
      expect(streamed[streamed.length - 1]!.phase).toBe('Complete');

      // sampled invariant: enablement is a pure function of the snapshot
      for (const s of streamed) {
        expect(actionEnabled(s, 'placeLoad')).toBe(
          s.appliance.doorOpen && s.appliance.loadGrams === 0,
        );
        expect(actionEnabled(s, 'openDoor')).toBe(!s.appliance.doorOpen);
      }
    },
    30_000,
  );
});
