/** Sentence splitting and tokenization for plain English news text. */

export interface RawToken {
  text: string;
  /** character offset into the source text, for debugging */
  offset: number;
}

const TOKEN_RE = /[A-Za-z]+(?:[-'][A-Za-z]+)*|\d+(?:[.,]\d+)*|[^\sA-Za-z\d]/g;

const ABBREVIATIONS = new Set([
  "mr", "mrs", "ms", "dr", "prof", "sen", "rep", "gen", "gov", "st",
  "jr", "sr", "inc", "corp", "ltd", "co", "vs", "etc", "u.s", "u.k",
]);

export function tokenize(text: string): RawToken[] {
  const tokens: RawToken[] = [];
  for (const match of text.matchAll(TOKEN_RE)) {
    tokens.push({ text: match[0], offset: match.index ?? 0 });
  }
  return tokens;
}

/** True when a period after this word ends a sentence rather than an
 * abbreviation or initial. */
function closesSentence(word: string): boolean {
  const lower = word.toLowerCase();
  if (ABBREVIATIONS.has(lower)) return false;
  if (/^[A-Z]$/.test(word)) return false; // single initial, "J."
  return true;
}

export function splitSentences(text: string): RawToken[][] {
  const tokens = tokenize(text);
  const sentences: RawToken[][] = [];
  let current: RawToken[] = [];
  for (let i = 0; i < tokens.length; i++) {
    const tok = tokens[i];
    current.push(tok);
    const isTerminal =
      tok.text === "!" || tok.text === "?" ||
      (tok.text === "." &&
        (current.length < 2 || closesSentence(current[current.length - 2].text)));
    if (isTerminal) {
      const next = tokens[i + 1];
      // closing quotes travel with the sentence they end
      if (next && (next.text === '"' || next.text === "'")) {
        current.push(next);
        i++;
      }
      sentences.push(current);
      current = [];
    }
  }
  if (current.length > 0) sentences.push(current);
  return sentences;
}
