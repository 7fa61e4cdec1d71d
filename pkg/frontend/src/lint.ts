/**
 * Client-side lint preview, mirroring the service's rules so authors get
 * live feedback before submitting. The service remains the authority:
 * a 422 response's diagnostics are rendered through the same paths.
 *
 * Rules:
 *   L1  device instructions must run with the door provably closed
 *   L2  first heat should be preceded by a weight change
 *   L3  power in [50, 1200] W, duration in [1, 3600] s
 *   L4  set ids and ability levels unique within a resource
 *   L5  media slot kind must match the referenced media kind
 *   L6  a device instruction must engage the magnetron
 */
import type {
  Diagnostic,
  InstructionSetDoc,
  ResourceDoc,
  UserInstructionDoc,
} from './types.js';

export const POWER_WATTS_MIN = 50;
export const POWER_WATTS_MAX = 1200;
export const DURATION_SECONDS_MAX = 3600;

type DoorContext = 'closed' | 'open' | 'unknown';

function mediaSlotDiags(instr: UserInstructionDoc, path: string): Diagnostic[] {
  const out: Diagnostic[] = [];
  for (const slot of ['image', 'audio', 'video'] as const) {
    const ref = instr[slot];
    if (ref && ref.kind !== slot) {
      out.push({
        severity: 'error',
        rule: 'L5',
        path: `${path}/${slot}`,
        message: `${slot} slot references media of kind '${ref.kind}'`,
      });
    }
  }
  return out;
}

export function lintInstructionSet(
  set: InstructionSetDoc,
  basePath = '',
): Diagnostic[] {
  const diags: Diagnostic[] = [];
  let door: DoorContext = 'closed';
  let weightSeen = false;
  let firstDeviceChecked = false;
  set.instructions.forEach((instr, i) => {
    const path = `${basePath}/instructions/${i}`;
    if (instr.kind === 'device') {
      if (door === 'open') {
        diags.push({
          severity: 'error',
          rule: 'L1',
          path,
          message: 'device instruction in a provably open-door context',
        });
      } else if (door === 'unknown') {
        diags.push({
          severity: 'warning',
          rule: 'L1',
          path,
          message: 'device instruction in an unknown door context',
        });
      }
      if (!firstDeviceChecked) {
        firstDeviceChecked = true;
        if (!weightSeen) {
          diags.push({
            severity: 'warning',
            rule: 'L2',
            path,
            message: 'no weight change precedes the first heating step',
          });
        }
      }
      if (instr.powerWatts < POWER_WATTS_MIN || instr.powerWatts > POWER_WATTS_MAX) {
        diags.push({
          severity: 'error',
          rule: 'L3',
          path: `${path}/powerWatts`,
          message: `power must be in [${POWER_WATTS_MIN}, ${POWER_WATTS_MAX}] W`,
        });
      }
      if (instr.durationSeconds < 1 || instr.durationSeconds > DURATION_SECONDS_MAX) {
        diags.push({
          severity: 'error',
          rule: 'L3',
          path: `${path}/durationSeconds`,
          message: `duration must be in [1, ${DURATION_SECONDS_MAX}] s`,
        });
      }
      if (!instr.activations.magnetron) {
        diags.push({
          severity: 'error',
          rule: 'L6',
          path: `${path}/activations/magnetron`,
          message: 'device instruction must engage the magnetron',
        });
      }
    } else {
      diags.push(...mediaSlotDiags(instr, path));
      const event = instr.until.event;
      if (event === 'DoorOpen') {
        door = 'open';
      } else if (event === 'DoorClosed') {
        door = 'closed';
      } else if (event === 'WeightChange') {
        // the user had to open the door to change the load
        weightSeen = true;
        door = 'unknown';
      }
    }
  });
  return diags;
}

export function lintResource(doc: ResourceDoc): Diagnostic[] {
  const diags: Diagnostic[] = [];
  if (doc.product.image.kind !== 'image') {
    diags.push({
      severity: 'error',
      rule: 'L5',
      path: '/product/image',
      message: `product image has kind '${doc.product.image.kind}'`,
    });
  }
  const seenIds = new Map<string, number>();
  const seenLevels = new Map<number, number>();
  doc.instructionSets.forEach((set, i) => {
    const path = `/instructionSets/${i}`;
    if (seenIds.has(set.id)) {
      diags.push({
        severity: 'error',
        rule: 'L4',
        path: `${path}/id`,
        message: `set id '${set.id}' already used by set ${seenIds.get(set.id)}`,
      });
    } else {
      seenIds.set(set.id, i);
    }
    if (seenLevels.has(set.abilityLevel)) {
      diags.push({
        severity: 'error',
        rule: 'L4',
        path: `${path}/abilityLevel`,
        message:
          `ability level ${set.abilityLevel} already used by set ` +
          `${seenLevels.get(set.abilityLevel)}`,
      });
    } else {
      seenLevels.set(set.abilityLevel, i);
    }
    diags.push(...lintInstructionSet(set, path));
  });
  return diags;
}

export function hasErrors(diags: Diagnostic[]): boolean {
  return diags.some((d) => d.severity === 'error');
}
