/** Topic annotation: raw article text to corpus JSONL document records. */
import { corefClusters, normalizePhrase, type CorefMention } from "./coref.js";
import { depSubtree, nounPhrases, structSubtree, verbPhrases,
         type Phrase } from "./chunker.js";
import { nerSpans, type NeSpan } from "./ner.js";
import { properNounEvidence, tagSentence, type TaggedToken } from "./tagger.js";
import { splitSentences } from "./tokenizer.js";
import { senseRanks } from "./senses.js";
import { DocumentSchema, validateDocument,
         type DocumentRecord, type MentionRecord } from "./schema.js";
import { WikiCache } from "./wiki.js";

export interface RawDocument {
  docId: string;
  text: string;
}

export interface RawTopic {
  topicId: string;
  documents: RawDocument[];
}

export interface GoldSpan {
  sent: number;
  start: number;
  end: number;
  head?: number;
  gold?: string | null;
}

export interface AnnotateOptions {
  cache: WikiCache;
  mentionsFrom: "auto" | "gold";
  gold?: Record<string, GoldSpan[]>;
}

interface PendingMention {
  record: MentionRecord;
  docId: string;
  phraseTokens: string[];
  kind: "NP" | "VP";
}

const NOUN_TAGS = new Set(["NN", "NNS", "NNP", "NNPS"]);

function neLabelFor(spans: NeSpan[], head: number): NeSpan["label"] | null {
  for (const span of spans) {
    if (span.start <= head && head <= span.end) return span.label;
  }
  return null;
}

function wikiCandidates(tokens: TaggedToken[], phrase: Phrase): string[] {
  const full = [];
  for (let i = phrase.start; i <= phrase.end; i++) full.push(tokens[i].text);
  const compoundHead = [];
  for (let i = phrase.start; i <= phrase.end; i++) {
    if (i === phrase.head || NOUN_TAGS.has(tokens[i].pos)) {
      compoundHead.push(tokens[i].text);
    }
  }
  const candidates = [full.join(" ")];
  const sub = compoundHead.join(" ");
  if (sub !== candidates[0]) candidates.push(sub);
  const head = tokens[phrase.head].text;
  if (!candidates.includes(head)) candidates.push(head);
  return candidates;
}

function buildMention(
  docId: string,
  index: number,
  sent: number,
  tokens: TaggedToken[],
  phrase: Phrase,
  spans: NeSpan[],
  cache: WikiCache,
  gold: string | null,
): PendingMention {
  const ne = phrase.kind === "NP" ? neLabelFor(spans, phrase.head) : null;
  const struct = structSubtree(phrase);
  const dep = depSubtree(phrase, tokens, struct);
  const record: MentionRecord = {
    id: `${docId}_m${index}`,
    sent,
    start: phrase.start,
    end: phrase.end,
    head: phrase.head,
    ne,
    wiki: phrase.kind === "NP"
      ? cache.lookup(wikiCandidates(tokens, phrase))
      : null,
    senses: senseRanks(tokens[phrase.head].lemma, ne),
    dep: dep.map((e) => [e.gov, e.dep, e.rel] as [number, number, string]),
    struct,
    gold,
  };
  const phraseTokens = [];
  for (let i = phrase.start; i <= phrase.end; i++) {
    phraseTokens.push(tokens[i].text);
  }
  return { record, docId, phraseTokens, kind: phrase.kind };
}

function autoPhrases(tokens: TaggedToken[], spans: NeSpan[]): Phrase[] {
  const bySpan = new Map<string, Phrase>();
  for (const phrase of [...nounPhrases(tokens), ...verbPhrases(tokens)]) {
    bySpan.set(`${phrase.start}:${phrase.end}`, phrase);
  }
  // NER spans not already covered by an identical NP become mentions too
  for (const span of spans) {
    const key = `${span.start}:${span.end}`;
    if (!bySpan.has(key)) {
      bySpan.set(key, { start: span.start, end: span.end,
                        head: span.end, kind: "NP" });
    }
  }
  return [...bySpan.values()].sort(
    (a, b) => a.start - b.start || a.end - b.end,
  );
}

function goldPhrases(tokens: TaggedToken[], spans: GoldSpan[]): Phrase[] {
  return spans.map((span) => {
    let head = span.head ?? -1;
    if (head < 0) {
      head = span.end;
      for (let i = span.end; i >= span.start; i--) {
        if (NOUN_TAGS.has(tokens[i].pos)) {
          head = i;
          break;
        }
      }
    }
    return { start: span.start, end: span.end, head, kind: "NP" as const };
  });
}

export function annotateTopic(
  topic: RawTopic,
  options: AnnotateOptions,
): DocumentRecord[] {
  const tokenized = topic.documents.map((document) => ({
    docId: document.docId,
    sentences: splitSentences(document.text),
  }));
  // proper-noun evidence is topic-wide: a name sentence-initial in one
  // article is usually mid-sentence in another
  const evidence = properNounEvidence(
    tokenized.flatMap((d) => d.sentences),
  );

  const records: DocumentRecord[] = [];
  const pending: PendingMention[] = [];
  for (const { docId, sentences } of tokenized) {
    const tagged = sentences.map((s) => tagSentence(s, evidence));
    const mentions: MentionRecord[] = [];
    for (let sent = 0; sent < tagged.length; sent++) {
      const tokens = tagged[sent];
      const spans = nerSpans(tokens);
      let phrases: Phrase[];
      if (options.mentionsFrom === "gold") {
        const goldSpans = (options.gold?.[docId] ?? [])
          .filter((g) => g.sent === sent);
        phrases = goldPhrases(tokens, goldSpans);
      } else {
        phrases = autoPhrases(tokens, spans);
      }
      for (const phrase of phrases) {
        const goldLabel = options.mentionsFrom === "gold"
          ? (options.gold?.[docId] ?? []).find(
              (g) => g.sent === sent && g.start === phrase.start &&
                     g.end === phrase.end)?.gold ?? null
          : null;
        const built = buildMention(
          docId, mentions.length, sent, tokens, phrase, spans,
          options.cache, goldLabel);
        mentions.push(built.record);
        pending.push(built);
      }
    }
    records.push({
      doc_id: docId,
      sentences: tagged.map((s) => s.map((t) => ({
        index: t.index, text: t.text, lemma: t.lemma,
        pos: t.pos, stop: t.stop,
      }))),
      mentions,
      chains: [],
    });
  }

  // coreference over the concatenated topic, projected per document
  const corefInput: CorefMention[] = pending
    .filter((p) => p.kind === "NP")
    .map((p) => ({
      id: p.record.id,
      docId: p.docId,
      normalized: normalizePhrase(p.phraseTokens),
      headText: p.phraseTokens[p.record.head - p.record.start] ?? "",
      isNe: p.record.ne !== null,
    }));
  const docOf = new Map(pending.map((p) => [p.record.id, p.docId]));
  corefClusters(corefInput).forEach((cluster, clusterIndex) => {
    const perDoc = new Map<string, string[]>();
    for (const mid of cluster) {
      const docId = docOf.get(mid)!;
      perDoc.set(docId, [...(perDoc.get(docId) ?? []), mid]);
    }
    for (const [docId, members] of perDoc) {
      const record = records.find((r) => r.doc_id === docId)!;
      record.chains.push({
        id: `cc${clusterIndex}_${docId}`,
        mentions: members,
        wiki: null,
      });
    }
  });

  for (const record of records) {
    DocumentSchema.parse(record);
    const problems = validateDocument(record);
    if (problems.length > 0) {
      throw new Error(`${record.doc_id}: ${problems.join("; ")}`);
    }
  }
  return records;
}
