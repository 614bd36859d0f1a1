/** Output contract of the adapter: the corpus JSONL document record.
 *
 * Mirrors the validation the consuming engine performs on load, so schema
 * violations surface here with a named document instead of downstream.
 */
import { z } from "zod";

export const TokenSchema = z.object({
  index: z.number().int().nonnegative(),
  text: z.string().min(1),
  lemma: z.string(),
  pos: z.string(),
  stop: z.boolean(),
});

export const MentionSchema = z.object({
  id: z.string().min(1),
  sent: z.number().int().nonnegative(),
  start: z.number().int().nonnegative(),
  end: z.number().int().nonnegative(),
  head: z.number().int().nonnegative(),
  ne: z.string().nullable(),
  wiki: z.string().nullable(),
  senses: z.array(z.tuple([z.string(), z.number().int().positive()])),
  dep: z.array(z.tuple([z.number().int(), z.number().int(), z.string()])),
  struct: z.array(z.number().int()).max(20),
  gold: z.string().nullable(),
});

export const ChainSchema = z.object({
  id: z.string().min(1),
  mentions: z.array(z.string()).min(1),
  wiki: z.string().nullable(),
});

export const DocumentSchema = z.object({
  doc_id: z.string().min(1),
  sentences: z.array(z.array(TokenSchema)),
  mentions: z.array(MentionSchema),
  chains: z.array(ChainSchema),
});

export type DocumentRecord = z.infer<typeof DocumentSchema>;
export type MentionRecord = z.infer<typeof MentionSchema>;

/** Cross-field checks the type system cannot express. */
export function validateDocument(record: DocumentRecord): string[] {
  const problems: string[] = [];
  for (const mention of record.mentions) {
    const where = `mention ${mention.id}`;
    const sentence = record.sentences[mention.sent];
    if (!sentence) {
      problems.push(`${where}: sentence index out of range`);
      continue;
    }
    if (mention.start > mention.end || mention.end >= sentence.length) {
      problems.push(`${where}: bad span`);
    }
    if (mention.head < mention.start || mention.head > mention.end) {
      problems.push(`${where}: head outside span`);
    }
    const struct = new Set(mention.struct);
    if (!struct.has(mention.head)) {
      problems.push(`${where}: struct misses head`);
    }
    const depTokens = new Set([mention.head]);
    for (const [gov, dep] of mention.dep) {
      depTokens.add(gov);
      depTokens.add(dep);
    }
    if (depTokens.size !== struct.size ||
        [...depTokens].some((t) => !struct.has(t))) {
      problems.push(`${where}: dep token set differs from struct`);
    }
  }
  const mentionIds = new Set(record.mentions.map((m) => m.id));
  const claimed = new Set<string>();
  for (const chain of record.chains) {
    for (const mid of chain.mentions) {
      if (!mentionIds.has(mid)) {
        problems.push(`chain ${chain.id}: dangling mention ${mid}`);
      }
      if (claimed.has(mid)) {
        problems.push(`chain ${chain.id}: mention ${mid} in two chains`);
      }
      claimed.add(mid);
    }
  }
  return problems;
}
