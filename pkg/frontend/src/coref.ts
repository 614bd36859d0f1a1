/** Within-document coreference over the virtually concatenated topic.
 *
 * All documents of a topic are treated as one text: mentions cluster by
 * normalized phrase identity and, for named entities, by identical head
 * word. Each resulting cluster is then projected back onto the individual
 * documents, so a chain discovered across documents shows up as one
 * within-document chain per document it touches.
 */

export interface CorefMention {
  id: string;
  docId: string;
  /** lowercased span tokens with leading articles dropped */
  normalized: string;
  headText: string;
  isNe: boolean;
}

const ARTICLES = new Set(["a", "an", "the"]);

export function normalizePhrase(tokens: string[]): string {
  const words = tokens.map((t) => t.toLowerCase());
  while (words.length > 1 && ARTICLES.has(words[0])) words.shift();
  return words.join(" ");
}

class UnionFind {
  private parent = new Map<string, string>();

  find(x: string): string {
    let root = x;
    while (this.parent.get(root) !== undefined) root = this.parent.get(root)!;
    while (this.parent.get(x) !== undefined) {
      const next = this.parent.get(x)!;
      this.parent.set(x, root);
      x = next;
    }
    return root;
  }

  union(a: string, b: string): void {
    const ra = this.find(a);
    const rb = this.find(b);
    if (ra === rb) return;
    // deterministic: smaller id becomes the root
    if (ra < rb) this.parent.set(rb, ra);
    else this.parent.set(ra, rb);
  }
}

/** Returns clusters (lists of mention ids) with at least two members,
 * ordered by their smallest mention id. */
export function corefClusters(mentions: CorefMention[]): string[][] {
  const uf = new UnionFind();
  const byPhrase = new Map<string, string>();
  const byNeHead = new Map<string, string>();
  for (const mention of mentions) {
    if (mention.normalized.length > 0) {
      const prior = byPhrase.get(mention.normalized);
      if (prior !== undefined) uf.union(prior, mention.id);
      else byPhrase.set(mention.normalized, mention.id);
    }
    if (mention.isNe) {
      const key = mention.headText.toLowerCase();
      const prior = byNeHead.get(key);
      if (prior !== undefined) uf.union(prior, mention.id);
      else byNeHead.set(key, mention.id);
    }
  }
  const groups = new Map<string, string[]>();
  for (const mention of mentions) {
    const root = uf.find(mention.id);
    const group = groups.get(root) ?? [];
    group.push(mention.id);
    groups.set(root, group);
  }
  return [...groups.values()]
    .filter((g) => g.length >= 2)
    .map((g) => [...g].sort())
    .sort((a, b) => (a[0] < b[0] ? -1 : 1));
}
