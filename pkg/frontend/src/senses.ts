/** Ranked lexicographer-category lookup for mention heads.
 *
 * A compact built-in table stands in for a full lexical database; the NE
 * label, when present, contributes the category the label implies at rank 1.
 */

export type SenseRank = [string, number];

const TABLE: Record<string, SenseRank[]> = {
  // people
  minister: [["noun.person", 1]],
  president: [["noun.person", 1]],
  leader: [["noun.person", 1]],
  dictator: [["noun.person", 1]],
  spokesman: [["noun.person", 1]],
  senator: [["noun.person", 1]],
  official: [["noun.person", 1], ["noun.group", 2]],
  alien: [["noun.person", 1]],
  immigrant: [["noun.person", 1]],
  migrant: [["noun.person", 1]],
  worker: [["noun.person", 1]],
  voter: [["noun.person", 1]],
  // groups
  government: [["noun.group", 1]],
  party: [["noun.group", 1], ["noun.event", 2]],
  administration: [["noun.group", 1], ["noun.act", 2]],
  committee: [["noun.group", 1]],
  group: [["noun.group", 1]],
  crowd: [["noun.group", 1]],
  family: [["noun.group", 1]],
  company: [["noun.group", 1]],
  shareholder: [["noun.person", 1], ["noun.group", 2]],
  // places
  country: [["noun.location", 1]],
  state: [["noun.location", 1], ["noun.group", 2]],
  city: [["noun.location", 1]],
  border: [["noun.location", 1]],
  // events and abstractions
  meeting: [["noun.event", 1]],
  summit: [["noun.event", 1], ["noun.location", 2]],
  election: [["noun.event", 1]],
  war: [["noun.event", 1]],
  talk: [["noun.communication", 1]],
  issue: [["noun.communication", 1], ["noun.cognition", 2]],
  deal: [["noun.communication", 1]],
  agreement: [["noun.communication", 1]],
  policy: [["noun.cognition", 1]],
  crisis: [["noun.state", 1]],
  // common verbs
  speak: [["verb.communication", 1]],
  say: [["verb.communication", 1]],
  discuss: [["verb.communication", 1]],
  tell: [["verb.communication", 1]],
  meet: [["verb.social", 1]],
  agree: [["verb.communication", 1], ["verb.cognition", 2]],
  go: [["verb.motion", 1]],
  arrive: [["verb.motion", 1]],
  march: [["verb.motion", 1]],
  cross: [["verb.motion", 1]],
};

const NE_CATEGORY: Record<string, string> = {
  PERSON: "noun.person",
  GPE: "noun.location",
  ORG: "noun.group",
};

export function senseRanks(
  headLemma: string,
  neLabel: string | null,
): SenseRank[] {
  const senses: SenseRank[] = [];
  const seen = new Set<string>();
  if (neLabel && NE_CATEGORY[neLabel]) {
    senses.push([NE_CATEGORY[neLabel], 1]);
    seen.add(NE_CATEGORY[neLabel]);
  }
  for (const [category, rank] of TABLE[headLemma] ?? []) {
    if (seen.has(category)) continue;
    seen.add(category);
    // shift behind the NE-derived sense when one is present
    senses.push([category, senses.length > 0 && rank === 1 ? rank + 1 : rank]);
  }
  return senses;
}
