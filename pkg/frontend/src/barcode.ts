/**
 * EAN-13 check digit validation, used to disable the authoring form's
 * submit button before anything touches the network.
 */

/** Check digit for the first 12 digits: weights 1,3,1,3,... , mod 10. */
export function computeCheckDigit(first12: string): number {
  if (!/^[0-9]{12}$/.test(first12)) {
    throw new Error('expected exactly 12 digits');
  }
  let total = 0;
  for (let i = 0; i < 12; i++) {
    const digit = first12.charCodeAt(i) - 48;
    total += i % 2 === 0 ? digit : 3 * digit;
  }
  return (10 - (total % 10)) % 10;
}

export function isValidBarcode(text: string): boolean {
  if (!/^[0-9]{13}$/.test(text)) {
    return false;
  }
  return computeCheckDigit(text.slice(0, 12)) === Number(text[12]);
}
