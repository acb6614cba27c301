/** Reference machines over {a, b}: "contains b", and binary value. */

export const A1_TEXT = [
  "context = context<letterset<char_letters(ab)>, b>",
  "$ -> 0",
  "0 -> 0 a, b",
  "0 -> 1 b",
  "1 -> 1 a, b",
  "1 -> $",
  "",
].join("\n");

export const A2_TEXT = [
  "context = context<letterset<char_letters(ab)>, z>",
  "$ -> 0",
  "0 -> 0 a, b",
  "0 -> 1 b",
  "1 -> 1 a, b <2>",
  "1 -> $",
  "",
].join("\n");

export const LAW_TEXT = [
  "context = context<wordset<char_letters(ab)>, b>",
  "$ -> 0",
  "0 -> 1 ab",
  "1 -> $",
  "",
].join("\n");
