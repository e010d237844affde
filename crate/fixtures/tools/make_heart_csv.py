#!/usr/bin/env python3
"""Writes a synthetic stand-in for heart_failure_clinical_records_dataset.csv.

Same header, row count and class balance as the public file (299 rows,
96 deaths). Values are drawn from rough per-column distributions; they are
not patient data. Output is deterministic.

    python3 fixtures/tools/make_heart_csv.py > fixtures/heart_failure_clinical_records_dataset.csv
"""
import random
import sys

ROWS = 299
DEATHS = 96
# Ones per binary column, matching the public file.
BINARY_ONES = {
    "anaemia": 129,
    "diabetes": 125,
    "high_blood_pressure": 105,
    "sex": 194,
    "smoking": 96,
}
HEADER = [
    "age", "anaemia", "creatinine_phosphokinase", "diabetes",
    "ejection_fraction", "high_blood_pressure", "platelets",
    "serum_creatinine", "serum_sodium", "sex", "smoking", "time",
    "DEATH_EVENT",
]


def shuffled_flags(rng, ones):
    flags = [1] * ones + [0] * (ROWS - ones)
    rng.shuffle(flags)
    return flags


def main():
    rng = random.Random(20200203)
    binary = {name: shuffled_flags(rng, n) for name, n in BINARY_ONES.items()}
    death = shuffled_flags(rng, DEATHS)
    out = sys.stdout
    out.write(",".join(HEADER) + "\n")
    for i in range(ROWS):
        d = death[i]
        age = min(95, max(40, round(rng.gauss(65 if d else 59, 11))))
        cpk = min(7861, max(23, round(rng.lognormvariate(5.8, 0.9))))
        ef = min(80, max(14, round(rng.gauss(33 if d else 40, 11))))
        platelets = int(round(min(850000, max(25100, rng.gauss(263000, 95000))), -2))
        creatinine = round(min(9.4, max(0.5, rng.lognormvariate(0.35 if d else 0.1, 0.4))), 2)
        sodium = min(148, max(113, round(rng.gauss(135 if d else 137, 4.5))))
        time = min(285, max(4, round(rng.gauss(70 if d else 158, 60))))
        row = [
            age, binary["anaemia"][i], cpk, binary["diabetes"][i], ef,
            binary["high_blood_pressure"][i], platelets, creatinine, sodium,
            binary["sex"][i], binary["smoking"][i], time, d,
        ]
        out.write(",".join(str(v) for v in row) + "\n")


if __name__ == "__main__":
    main()
