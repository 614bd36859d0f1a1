/** Named-entity recognition over proper-noun runs, with small gazetteers. */
import type { TaggedToken } from "./tagger.js";

export interface NeSpan {
  start: number;
  end: number;
  label: "PERSON" | "GPE" | "ORG";
}

const PLACES = new Set([
  "united states", "united kingdom", "north korea", "south korea",
  "america", "russia", "china", "france", "germany", "britain", "japan",
  "iran", "iraq", "syria", "mexico", "canada", "europe", "washington",
  "london", "moscow", "beijing", "pyongyang", "seoul", "paris", "berlin",
]);
const PLACE_WORDS = new Set([
  "states", "korea", "america", "russia", "china", "france", "germany",
  "britain", "japan", "iran", "iraq", "syria", "mexico", "canada",
  "europe", "washington", "london", "moscow", "beijing", "pyongyang",
]);
const ORG_SUFFIXES = new Set([
  "committee", "corp", "inc", "party", "senate", "congress", "ministry",
  "council", "administration", "house", "department", "agency", "court",
  "university", "bank", "times", "post", "union",
]);

function classify(tokens: TaggedToken[], start: number, end: number):
    NeSpan["label"] {
  const words = [];
  for (let i = start; i <= end; i++) words.push(tokens[i].text.toLowerCase());
  const joined = words.join(" ");
  if (PLACES.has(joined)) return "GPE";
  if (words.some((w) => PLACE_WORDS.has(w))) return "GPE";
  if (ORG_SUFFIXES.has(words[words.length - 1])) return "ORG";
  return "PERSON";
}

/** Maximal runs of NNP/NNPS tokens become entity spans. */
export function nerSpans(tokens: TaggedToken[]): NeSpan[] {
  const spans: NeSpan[] = [];
  let start = -1;
  for (let i = 0; i <= tokens.length; i++) {
    const isProper = i < tokens.length && tokens[i].pos.startsWith("NNP");
    if (isProper && start < 0) start = i;
    if (!isProper && start >= 0) {
      spans.push({ start, end: i - 1, label: classify(tokens, start, i - 1) });
      start = -1;
    }
  }
  return spans;
}
