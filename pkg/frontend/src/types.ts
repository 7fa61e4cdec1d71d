/**
 * Wire types shared with the csa-service HTTP API.
 *
 * These mirror the JSON the service emits; the console never invents
 * state of its own — every rendered phase comes from a SessionSnapshot.
 */

export type MediaKind = 'image' | 'audio' | 'video';

export interface MediaRef {
  name: string;
  kind: MediaKind;
}

export type TransitionEventName =
  | 'DoorOpen'
  | 'DoorClosed'
  | 'WeightChange'
  | 'TimerExpired'
  | 'UserConfirm';

export interface TransitionSpec {
  event: TransitionEventName;
  minDeltaGrams?: number;
  durationSeconds?: number;
}

export interface UserInstructionDoc {
  kind: 'user';
  text: string;
  image?: MediaRef;
  audio?: MediaRef;
  video?: MediaRef;
  until: TransitionSpec;
}

export interface ActivationsDoc {
  light: boolean;
  carousel: boolean;
  magnetron: boolean;
  smokeAlarmAudible: boolean;
}

export interface DeviceInstructionDoc {
  kind: 'device';
  powerWatts: number;
  durationSeconds: number;
  activations: ActivationsDoc;
}

export type InstructionDoc = UserInstructionDoc | DeviceInstructionDoc;

export interface InstructionSetDoc {
  id: string;
  abilityLevel: number;
  instructions: InstructionDoc[];
}

export interface ProductDoc {
  barcode: string;
  name: string;
  category: string;
  image: MediaRef;
}

export interface ResourceDoc {
  product: ProductDoc;
  instructionSets: InstructionSetDoc[];
}

export interface Diagnostic {
  severity: 'error' | 'warning';
  rule: string;
  path: string;
  message: string;
}

export interface ApplianceView {
  doorOpen: boolean;
  loadGrams: number;
  foodTempC: number;
  smokeActive: boolean;
  magnetronOn: boolean;
  carouselOn: boolean;
  lightOn: boolean;
  clockMillis: number;
}

export type PhaseName =
  | 'AwaitingUser'
  | 'Heating'
  | 'HeatingPaused'
  | 'SmokeHold'
  | 'Complete'
  | 'Aborted';

export interface SessionSnapshot {
  sessionId: string;
  barcode: string;
  abilityLevel: number;
  setId: string;
  revision: number;
  phase: PhaseName;
  instructionIndex: number;
  instructionCount: number;
  instructionText: string;
  remainingMillis: number;
  expectedEvent: TransitionSpec | null;
  pendingMedia: MediaRef[];
  alerts: string[];
  appliance: ApplianceView;
  faults: string[];
  terminal: boolean;
}

export interface ServiceError {
  code: string;
  message: string;
  diagnostics?: Diagnostic[];
}
