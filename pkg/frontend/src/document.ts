/**
 * Builds canonical resource documents from the authoring form's row model.
 *
 * Canonical form: fixed key order (insertion order below), two-space
 * indent, UTF-8, trailing newline — byte-identical to what the service
 * stores, so a clean form submission round-trips exactly.
 */
import type {
  InstructionDoc,
  InstructionSetDoc,
  MediaKind,
  MediaRef,
  ResourceDoc,
  TransitionEventName,
  TransitionSpec,
} from './types.js';

export interface MediaField {
  name: string;
  kind: MediaKind;
}

/** One row of the authoring form's instruction table. */
export interface UserRow {
  kind: 'user';
  text: string;
  image?: MediaField;
  audio?: MediaField;
  video?: MediaField;
  untilEvent: TransitionEventName;
  minDeltaGrams?: number;
  durationSeconds?: number;
}

export interface DeviceRow {
  kind: 'device';
  powerWatts: number;
  durationSeconds: number;
  carousel: boolean;
}

export type InstructionRow = UserRow | DeviceRow;

export interface SetForm {
  id: string;
  abilityLevel: number;
  rows: InstructionRow[];
}

export interface AuthorForm {
  barcode: string;
  name: string;
  category: string;
  imageName: string;
  sets: SetForm[];
}

function mediaRef(field: MediaField): MediaRef {
  return { name: field.name, kind: field.kind };
}

function untilSpec(row: UserRow): TransitionSpec {
  if (row.untilEvent === 'WeightChange') {
    return { event: row.untilEvent, minDeltaGrams: row.minDeltaGrams ?? 0 };
  }
  if (row.untilEvent === 'TimerExpired') {
    return { event: row.untilEvent, durationSeconds: row.durationSeconds ?? 0 };
  }
  return { event: row.untilEvent };
}

function rowToInstruction(row: InstructionRow): InstructionDoc {
  if (row.kind === 'device') {
    return {
      kind: 'device',
      powerWatts: row.powerWatts,
      durationSeconds: row.durationSeconds,
      activations: {
        light: true,
        carousel: row.carousel,
        magnetron: true,
        smokeAlarmAudible: false,
      },
    };
  }
  // optional media slots keep the canonical key order: image, audio, video, until
  const ordered: Record<string, unknown> = { kind: 'user', text: row.text };
  if (row.image) ordered['image'] = mediaRef(row.image);
  if (row.audio) ordered['audio'] = mediaRef(row.audio);
  if (row.video) ordered['video'] = mediaRef(row.video);
  ordered['until'] = untilSpec(row);
  return ordered as unknown as InstructionDoc;
}

function setToDoc(set: SetForm): InstructionSetDoc {
  return {
    id: set.id,
    abilityLevel: set.abilityLevel,
    instructions: set.rows.map(rowToInstruction),
  };
}

export function buildResource(form: AuthorForm): ResourceDoc {
  return {
    product: {
      barcode: form.barcode,
      name: form.name,
      category: form.category,
      image: { name: form.imageName, kind: 'image' },
    },
    instructionSets: form.sets.map(setToDoc),
  };
}

/** Canonical serialization; matches the service's stored bytes. */
export function serializeResource(doc: ResourceDoc): string {
  return JSON.stringify(doc, null, 2) + '\n';
}

/** Required-field check; messages keyed by form field for inline display. */
export function missingFields(form: AuthorForm): string[] {
  const missing: string[] = [];
  if (!form.name.trim()) missing.push('name');
  if (!form.category.trim()) missing.push('category');
  if (!form.imageName.trim()) missing.push('imageName');
  if (form.sets.length === 0) missing.push('sets');
  for (const set of form.sets) {
    if (!set.id.trim()) missing.push(`set ${set.abilityLevel}: id`);
    if (set.rows.length === 0) missing.push(`set ${set.id}: instructions`);
    for (const row of set.rows) {
      if (row.kind === 'user' && !row.text.trim()) {
        missing.push(`set ${set.id}: instruction text`);
      }
    }
  }
  return missing;
}
