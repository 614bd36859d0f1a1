/** Offline entity linking against a surface-to-title cache file. */
import { readFileSync } from "node:fs";

export class WikiCache {
  private entries: Map<string, string>;
  /** surfaces that were asked for but not present, for cache curation */
  readonly misses: Set<string> = new Set();

  constructor(entries: Record<string, string>) {
    this.entries = new Map(
      Object.entries(entries).map(([k, v]) => [k.toLowerCase(), v]),
    );
  }

  static fromFile(path: string): WikiCache {
    const raw = JSON.parse(readFileSync(path, "utf-8"));
    if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
      throw new Error(`wiki cache ${path}: top level must be an object`);
    }
    return new WikiCache(raw as Record<string, string>);
  }

  static empty(): WikiCache {
    return new WikiCache({});
  }

  /** First hit among the candidate surfaces wins; a miss yields null and
   * the mention is emitted without a title. */
  lookup(candidates: string[]): string | null {
    for (const candidate of candidates) {
      const key = candidate.toLowerCase();
      const hit = this.entries.get(key);
      if (hit !== undefined) return hit;
      this.misses.add(key);
    }
    return null;
  }
}
