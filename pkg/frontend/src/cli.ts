#!/usr/bin/env node
/** Command line entry: annotate a directory of article files into the
 * corpus JSONL format.
 *
 * Exit codes: 0 success, 1 usage error, 2 unreadable or invalid input.
 */
import { readFileSync, readdirSync, statSync, writeFileSync }
  from "node:fs";
import { basename, join } from "node:path";
import { annotateTopic, type GoldSpan, type RawTopic } from "./annotate.js";
import { WikiCache } from "./wiki.js";

const USAGE = `usage: annotate --in <topic_dir> --out <topic.jsonl> \
--cache <wiki_cache.json> [--mentions-from auto|gold] [--gold <gold.json>]`;

interface Args {
  inDir: string;
  outFile: string;
  cacheFile: string;
  mentionsFrom: "auto" | "gold";
  goldFile: string | null;
}

function parseArgs(argv: string[]): Args {
  if (argv[0] !== "annotate") {
    throw new UsageError(`unknown command: ${argv[0] ?? "(none)"}`);
  }
  const values = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new UsageError(`bad argument: ${flag}`);
    }
    values.set(flag.slice(2), value);
  }
  const required = ["in", "out", "cache"];
  for (const name of required) {
    if (!values.has(name)) throw new UsageError(`missing --${name}`);
  }
  const mentionsFrom = values.get("mentions-from") ?? "auto";
  if (mentionsFrom !== "auto" && mentionsFrom !== "gold") {
    throw new UsageError(`--mentions-from must be auto or gold`);
  }
  const known = new Set(["in", "out", "cache", "mentions-from", "gold"]);
  for (const name of values.keys()) {
    if (!known.has(name)) throw new UsageError(`unknown flag --${name}`);
  }
  if (mentionsFrom === "gold" && !values.has("gold")) {
    throw new UsageError(`--mentions-from gold requires --gold <gold.json>`);
  }
  return {
    inDir: values.get("in")!,
    outFile: values.get("out")!,
    cacheFile: values.get("cache")!,
    mentionsFrom,
    goldFile: values.get("gold") ?? null,
  };
}

class UsageError extends Error {}
class DataError extends Error {}

function loadTopic(dir: string): RawTopic {
  let names: string[];
  try {
    if (!statSync(dir).isDirectory()) {
      throw new DataError(`${dir}: not a directory`);
    }
    names = readdirSync(dir).filter((n) => n.endsWith(".txt")).sort();
  } catch (err) {
    if (err instanceof DataError) throw err;
    throw new DataError(`${dir}: ${(err as Error).message}`);
  }
  if (names.length === 0) {
    throw new DataError(`${dir}: no .txt article files`);
  }
  return {
    topicId: basename(dir),
    documents: names.map((name) => ({
      docId: name.slice(0, -4),
      text: readFileSync(join(dir, name), "utf-8"),
    })),
  };
}

function loadGold(path: string): Record<string, GoldSpan[]> {
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new DataError(`${path}: ${(err as Error).message}`);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new DataError(`${path}: top level must map doc ids to span lists`);
  }
  return raw as Record<string, GoldSpan[]>;
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const topic = loadTopic(args.inDir);
    let cache: WikiCache;
    try {
      cache = WikiCache.fromFile(args.cacheFile);
    } catch (err) {
      throw new DataError((err as Error).message);
    }
    const gold = args.goldFile ? loadGold(args.goldFile) : undefined;
    let records;
    try {
      records = annotateTopic(topic, {
        cache, mentionsFrom: args.mentionsFrom, gold,
      });
    } catch (err) {
      throw new DataError((err as Error).message);
    }
    const lines = records.map((r) => JSON.stringify(r)).join("\n") + "\n";
    writeFileSync(args.outFile, lines, "utf-8");
    const mentionTotal = records.reduce((n, r) => n + r.mentions.length, 0);
    process.stderr.write(
      `${records.length} documents, ${mentionTotal} mentions -> ` +
      `${args.outFile}\n`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`error: ${err.message}\n${USAGE}\n`);
      return 1;
    }
    if (err instanceof DataError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
