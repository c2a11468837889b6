#!/usr/bin/env python3
"""Convert CELEX lemma files to the normalized TSV read by `homophony ingest`.

Joins the phonology (e.g. epl.cd), morphology (eml.cd) and, optionally,
syntax (esl.cd) lemma files on their id column. Column positions differ
between languages and releases, so each is a flag; the defaults match the
English CELEX 2 lemma files.

Output columns: orthography, phones, mono|multi, zero-derivation 0|1,
lexeme id, POS.
"""

import argparse
import csv
import sys

# English CELEX syntax class numbers.
POS_NAMES = {
    "1": "N", "2": "A", "3": "NUM", "4": "V", "5": "ART", "6": "PRON", "7": "ADV",
    "8": "PREP", "9": "C", "10": "I", "11": "SCON", "12": "CCON", "13": "LET",
    "14": "ABB", "15": "TO",
}

# DISC stress and syllable marks; everything else is one phone per character.
DISC_MARKS = set("'\"-")


def read_cd(path, encoding):
    with open(path, encoding=encoding, newline="") as f:
        for line in f:
            line = line.rstrip("\r\n")
            if line:
                yield line.split("\\")


def disc_phones(transcription):
    return " ".join(ch for ch in transcription if ch not in DISC_MARKS)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--phonology", required=True, help="epl.cd-style file")
    p.add_argument("--morphology", required=True, help="eml.cd-style file")
    p.add_argument("--syntax", help="esl.cd-style file (POS)")
    p.add_argument("--output", default="-", help="TSV path (default: stdout)")
    p.add_argument("--encoding", default="latin-1")
    p.add_argument("--id-col", type=int, default=0)
    p.add_argument("--head-col", type=int, default=1)
    p.add_argument("--phon-col", type=int, default=5, help="DISC transcription with stress")
    p.add_argument("--morph-col", type=int, default=3, help="MorphStatus")
    p.add_argument("--class-col", type=int, default=3, help="ClassNum in the syntax file")
    p.add_argument("--mono-status", default="M")
    p.add_argument("--zero-status", default="Z")
    args = p.parse_args(argv)

    morph = {}
    for row in read_cd(args.morphology, args.encoding):
        morph[row[args.id_col]] = row[args.morph_col]
    pos = {}
    if args.syntax:
        for row in read_cd(args.syntax, args.encoding):
            pos[row[args.id_col]] = POS_NAMES.get(row[args.class_col], row[args.class_col])

    out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="utf-8", newline="")
    writer = csv.writer(out, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_NONE,
                        escapechar="\\")
    written = skipped = 0
    for row in read_cd(args.phonology, args.encoding):
        lemma_id = row[args.id_col]
        phones = disc_phones(row[args.phon_col]) if len(row) > args.phon_col else ""
        status = morph.get(lemma_id)
        if not phones or status is None:
            skipped += 1
            continue
        writer.writerow([
            row[args.head_col],
            phones,
            "mono" if status in (args.mono_status, args.zero_status) else "multi",
            "1" if status == args.zero_status else "0",
            lemma_id,
            pos.get(lemma_id, ""),
        ])
        written += 1
    if out is not sys.stdout:
        out.close()
    print(f"wrote {written} rows, skipped {skipped}", file=sys.stderr)


if __name__ == "__main__":
    main()
