/**
 * Physical preconditions for the operate view's action buttons.
 *
 * A button is enabled exactly when the appliance would accept the action,
 * judged from the latest snapshot — the same rules the simulator enforces,
 * so a click can never draw a precondition error in normal use.
 */
import type { SessionSnapshot } from './types.js';

export type OperateAction =
  | 'openDoor'
  | 'closeDoor'
  | 'placeLoad'
  | 'removeLoad'
  | 'confirm'
  | 'abort';

export const OPERATE_ACTIONS: OperateAction[] = [
  'openDoor',
  'closeDoor',
  'placeLoad',
  'removeLoad',
  'confirm',
  'abort',
];

export function actionEnabled(snap: SessionSnapshot, action: OperateAction): boolean {
  const a = snap.appliance;
  switch (action) {
    case 'openDoor':
      return !a.doorOpen;
    case 'closeDoor':
      return a.doorOpen;
    case 'placeLoad':
      return a.doorOpen && a.loadGrams === 0;
    case 'removeLoad':
      return a.doorOpen && a.loadGrams > 0;
    case 'confirm':
      return !snap.terminal;
    case 'abort':
      return !snap.terminal;
  }
}
