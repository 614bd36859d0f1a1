/** Noun/verb phrase extraction with head finding and per-mention subtrees.
 *
 * The dependency subtree is a flat star rooted at the head (det, amod,
 * compound edges by tag) and the structure subtree is the span itself,
 * capped at 20 tokens around the head; that satisfies the corpus contract
 * and is as much syntax as the downstream sieves consume.
 */
import type { TaggedToken } from "./tagger.js";

export const MAX_SUBTREE = 20;

export interface Phrase {
  start: number;
  end: number;
  head: number;
  kind: "NP" | "VP";
}

export interface DepEdge {
  gov: number;
  dep: number;
  rel: string;
}

const NP_TAGS = new Set(["DT", "JJ", "NN", "NNS", "NNP", "NNPS", "CD"]);
const NOUN_TAGS = new Set(["NN", "NNS", "NNP", "NNPS"]);

export function nounPhrases(tokens: TaggedToken[]): Phrase[] {
  const phrases: Phrase[] = [];
  let start = -1;
  for (let i = 0; i <= tokens.length; i++) {
    const inNp = i < tokens.length && NP_TAGS.has(tokens[i].pos);
    if (inNp && start < 0) start = i;
    if (!inNp && start >= 0) {
      // head = last noun of the run; trailing non-nouns are dropped
      let head = -1;
      for (let j = i - 1; j >= start; j--) {
        if (NOUN_TAGS.has(tokens[j].pos)) {
          head = j;
          break;
        }
      }
      if (head >= 0) phrases.push({ start, end: head, head, kind: "NP" });
      start = -1;
    }
  }
  return phrases;
}

export function verbPhrases(tokens: TaggedToken[]): Phrase[] {
  const phrases: Phrase[] = [];
  for (const token of tokens) {
    if (/^VB/.test(token.pos) && !token.stop) {
      phrases.push({ start: token.index, end: token.index,
                     head: token.index, kind: "VP" });
    }
  }
  return phrases;
}

/** Span token indices capped to the window of MAX_SUBTREE around the head. */
export function structSubtree(phrase: Phrase): number[] {
  const indices = [];
  for (let i = phrase.start; i <= phrase.end; i++) indices.push(i);
  if (indices.length <= MAX_SUBTREE) return indices;
  const headAt = phrase.head - phrase.start;
  const from = Math.max(0, Math.min(headAt - Math.floor(MAX_SUBTREE / 2),
                                    indices.length - MAX_SUBTREE));
  return indices.slice(from, from + MAX_SUBTREE);
}

export function depSubtree(
  phrase: Phrase,
  tokens: TaggedToken[],
  struct: number[],
): DepEdge[] {
  const edges: DepEdge[] = [];
  for (const i of struct) {
    if (i === phrase.head) continue;
    const pos = tokens[i].pos;
    let rel = "dep";
    if (pos === "DT") rel = "det";
    else if (pos === "JJ") rel = "amod";
    else if (NOUN_TAGS.has(pos)) rel = "compound";
    else if (pos === "CD") rel = "nummod";
    edges.push({ gov: phrase.head, dep: i, rel });
  }
  return edges;
}
