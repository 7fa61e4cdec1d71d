import type { SessionSnapshot } from '../src/types.js';

/** A plausible snapshot with overridable fields, for view/precondition tests. */
export function makeSnapshot(
  overrides: Partial<SessionSnapshot> & {
    appliance?: Partial<SessionSnapshot['appliance']>;
  } = {},
): SessionSnapshot {
  const { appliance, ...rest } = overrides;
  return {
    sessionId: 's-1',
    barcode: '5000111222334',
    abilityLevel: 1,
    setId: 'guided',
    revision: 1,
    phase: 'AwaitingUser',
    instructionIndex: 0,
    instructionCount: 5,
    instructionText: 'Open the door',
    remainingMillis: 0,
    expectedEvent: { event: 'DoorOpen' },
    pendingMedia: [],
    alerts: [],
    appliance: {
      doorOpen: false,
      loadGrams: 0,
      foodTempC: 20,
      smokeActive: false,
      magnetronOn: false,
      carouselOn: false,
      lightOn: true,
      clockMillis: 0,
      ...appliance,
    },
    faults: [],
    terminal: false,
    ...rest,
  };
}
