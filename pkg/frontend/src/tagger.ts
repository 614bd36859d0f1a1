/** Rule-based part-of-speech tagging, lemmatization, and stopword flags.
 *
 * Deliberately small: closed-class word lists, suffix rules, and
 * capitalization evidence collected over the whole topic. Accuracy targets
 * clean news prose, which is all the adapter ingests.
 */
import type { RawToken } from "./tokenizer.js";

export interface TaggedToken {
  index: number;
  text: string;
  lemma: string;
  pos: string;
  stop: boolean;
}

const DETERMINERS = new Set([
  "a", "an", "the", "this", "that", "these", "those", "some", "many",
  "few", "each", "every", "no", "any", "both", "all",
]);
const PRONOUNS = new Set([
  "he", "she", "it", "they", "we", "i", "you", "him", "her", "them",
  "us", "me", "who", "whom", "his", "hers", "its", "their", "our",
]);
const PREPOSITIONS = new Set([
  "of", "in", "on", "at", "by", "for", "with", "from", "to", "into",
  "over", "under", "about", "against", "during", "between", "after",
  "before", "through", "without",
]);
const CONJUNCTIONS = new Set(["and", "or", "but", "nor", "so", "yet"]);
const AUXILIARIES: Record<string, [string, string]> = {
  // surface -> [tag, lemma]
  is: ["VBZ", "be"], are: ["VBP", "be"], was: ["VBD", "be"],
  were: ["VBD", "be"], be: ["VB", "be"], been: ["VBN", "be"],
  being: ["VBG", "be"], has: ["VBZ", "have"], have: ["VBP", "have"],
  had: ["VBD", "have"], do: ["VBP", "do"], does: ["VBZ", "do"],
  did: ["VBD", "do"], will: ["MD", "will"], would: ["MD", "would"],
  can: ["MD", "can"], could: ["MD", "could"], may: ["MD", "may"],
  might: ["MD", "might"], must: ["MD", "must"], shall: ["MD", "shall"],
  should: ["MD", "should"],
};
const EXTRA_STOPWORDS = new Set([
  "not", "as", "than", "too", "very", "also", "there", "here", "when",
  "while", "because", "if", "then",
]);

const IRREGULAR_PAST: Record<string, string> = {
  spoke: "speak", met: "meet", went: "go", said: "say", told: "tell",
  took: "take", gave: "give", made: "make", held: "hold", saw: "see",
  came: "come", got: "get", began: "begin", left: "leave", kept: "keep",
  led: "lead", found: "find", brought: "bring", thought: "think",
  stood: "stand", rose: "rise", fell: "fall", won: "win", lost: "lose",
  wrote: "write", drew: "draw", grew: "grow", knew: "know", sat: "sit",
};
const IRREGULAR_PLURAL: Record<string, string> = {
  men: "man", women: "woman", children: "child", people: "person",
  countries: "country", parties: "party", authorities: "authority",
};
const ADJECTIVES = new Set([
  "illegal", "undocumented", "prime", "senior", "former", "new", "old",
  "big", "small", "major", "minor", "foreign", "domestic", "national",
  "international", "political", "economic", "last", "first", "second",
  "other", "such", "own", "korean", "american",
  "european", "russian", "chinese", "british", "french", "german",
]);
// -ing words that are ordinary nouns, not gerunds
const ING_NOUNS = new Set([
  "meeting", "crossing", "building", "morning", "evening", "wedding",
  "warning", "hearing", "opening", "spending", "funding", "housing",
  "shooting", "ruling", "briefing", "finding", "thing", "king", "wing",
  "spring", "something", "nothing", "anything", "everything",
]);

/** Words that occur capitalized in a non-initial position anywhere in the
 * topic are treated as proper nouns even sentence-initially. */
export function properNounEvidence(sentences: RawToken[][]): Set<string> {
  const evidence = new Set<string>();
  for (const sentence of sentences) {
    for (let i = 1; i < sentence.length; i++) {
      const text = sentence[i].text;
      if (/^[A-Z]/.test(text)) evidence.add(text.toLowerCase());
    }
  }
  return evidence;
}

function nounLemma(word: string): string {
  const lower = word.toLowerCase();
  if (IRREGULAR_PLURAL[lower]) return IRREGULAR_PLURAL[lower];
  if (/ies$/.test(lower) && lower.length > 4) return lower.slice(0, -3) + "y";
  if (/(ses|xes|zes|ches|shes)$/.test(lower)) return lower.slice(0, -2);
  if (/ss$/.test(lower)) return lower;
  if (/s$/.test(lower) && lower.length > 2) return lower.slice(0, -1);
  return lower;
}

function pastLemma(word: string): string {
  const lower = word.toLowerCase();
  if (IRREGULAR_PAST[lower]) return IRREGULAR_PAST[lower];
  if (/ied$/.test(lower)) return lower.slice(0, -3) + "y";
  if (/([bdglmnprt])\1ed$/.test(lower)) return lower.slice(0, -3);
  if (/eed$/.test(lower)) return lower;
  if (/ed$/.test(lower)) return restoreSilentE(lower.slice(0, -2));
  return lower;
}

/** Restore a dropped silent e: "arriv" -> "arrive", "chang" -> "change",
 * but "discuss" and "wait" stay as they are. */
function restoreSilentE(stem: string): string {
  if (/[cgvz]$/.test(stem) && !/(.)\1$/.test(stem)) return stem + "e";
  return stem;
}

function gerundLemma(word: string): string {
  const lower = word.toLowerCase();
  if (/([bdglmnprt])\1ing$/.test(lower)) return lower.slice(0, -4);
  if (/ing$/.test(lower) && lower.length > 5) {
    return restoreSilentE(lower.slice(0, -3));
  }
  return lower;
}

export function tagSentence(
  sentence: RawToken[],
  properEvidence: Set<string>,
): TaggedToken[] {
  const out: TaggedToken[] = [];
  for (let i = 0; i < sentence.length; i++) {
    const text = sentence[i].text;
    const lower = text.toLowerCase();
    let pos: string;
    let lemma = lower;
    let stop = false;

    if (/^[^A-Za-z\d]/.test(text)) {
      pos = /^[.!?]$/.test(text) ? "." : text[0] === "," ? "," : text[0];
    } else if (/^\d/.test(text)) {
      pos = "CD";
    } else if (DETERMINERS.has(lower)) {
      pos = "DT";
      stop = true;
    } else if (PRONOUNS.has(lower)) {
      pos = "PRP";
      stop = true;
    } else if (PREPOSITIONS.has(lower)) {
      pos = "IN";
      stop = true;
    } else if (CONJUNCTIONS.has(lower)) {
      pos = "CC";
      stop = true;
    } else if (AUXILIARIES[lower]) {
      [pos, lemma] = AUXILIARIES[lower];
      stop = true;
    } else if (EXTRA_STOPWORDS.has(lower)) {
      pos = "RB";
      stop = true;
    } else if (
      /^[A-Z]/.test(text) &&
      (i > 0 || properEvidence.has(lower)) &&
      !ADJECTIVES.has(lower)
    ) {
      pos = /s$/.test(text) && !/ss$/.test(text) ? "NNPS" : "NNP";
      lemma = pos === "NNPS" ? nounLemma(text) : lower;
    } else if (ADJECTIVES.has(lower)) {
      pos = "JJ";
      // sentence-initial capitalized adjectives keep their casing for the
      // NE-modifier heuristics downstream, so no text rewriting here
    } else if (IRREGULAR_PAST[lower]) {
      pos = "VBD";
      lemma = IRREGULAR_PAST[lower];
    } else if (IRREGULAR_PLURAL[lower]) {
      pos = "NNS";
      lemma = IRREGULAR_PLURAL[lower];
    } else if (/ly$/.test(lower) && lower.length > 3) {
      pos = "RB";
    } else if (ING_NOUNS.has(lower)) {
      pos = "NN";
    } else if (/ing$/.test(lower) && lower.length > 5) {
      pos = "VBG";
      lemma = gerundLemma(lower);
    } else if (/ed$/.test(lower) && lower.length > 3) {
      pos = "VBD";
      lemma = pastLemma(lower);
    } else if (/(ous|ful|ive|ical|able|ible)$/.test(lower)) {
      pos = "JJ";
    } else if (/s$/.test(lower) && !/ss$/.test(lower) && lower.length > 3) {
      pos = "NNS";
      lemma = nounLemma(lower);
    } else {
      pos = "NN";
    }
    out.push({ index: i, text, lemma, pos, stop });
  }
  return out;
}

export const STOPWORD_CHECK = { DETERMINERS, PRONOUNS, PREPOSITIONS };
