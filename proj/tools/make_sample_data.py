#!/usr/bin/env python3
# Copyright 2026 The UEval Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the synthetic sample corpus under data/.

Usage: tools/make_sample_data.py [output_dir]
"""

import json
import math
import os
import random
import sys

QA = [
    ("What is the capital of France?", "Paris", "Lyon"),
    ("Who wrote Hamlet?", "William Shakespeare", "Christopher Marlowe"),
    ("What is the largest planet?", "Jupiter", "Saturn"),
    ("What gas do plants absorb?", "carbon dioxide", "oxygen"),
    ("How many legs does a spider have?", "eight", "six"),
    ("What is the boiling point of water in Celsius?", "100 degrees", "90 degrees"),
    ("Who painted the Mona Lisa?", "Leonardo da Vinci", "Michelangelo"),
    ("What is the chemical symbol for gold?", "Au", "Ag"),
    ("Which ocean is the largest?", "the Pacific Ocean", "the Atlantic Ocean"),
    ("What is the square root of 81?", "nine", "eight"),
    ("In which country is Kyoto?", "Japan", "China"),
    ("What is the fastest land animal?", "the cheetah", "the lion"),
    ("Who discovered penicillin?", "Alexander Fleming", "Louis Pasteur"),
    ("What is the hardest natural substance?", "diamond", "quartz"),
    ("What language is spoken in Brazil?", "Portuguese", "Spanish"),
]

STORIES = [
    "the old lighthouse keeper climbed the stairs every night to light the lamp for the ships",
    "a small fox followed the river through the forest until it reached the quiet village",
    "the baker woke before dawn to knead the dough and fire the brick oven for the market",
    "two sisters built a raft from driftwood and sailed across the lake to the island",
]

STRENGTHS = [0.0, 0.25, 0.5, 0.75, 1.0]


def sample(rng, text, cluster, confident):
  n_tokens = max(1, len(text.split()))
  scale = 0.15 if confident else 1.2
  logprobs = [round(-abs(rng.gauss(0.0, scale)) - 0.01, 4) for _ in range(n_tokens)]
  base = [1.0, 0.0, 0.0, 0.0] if cluster == 0 else [0.0, 1.0, 0.0, 0.0]
  if cluster > 1:
    base = [0.0, 0.0, 1.0, 0.0]
  embedding = [round(b + rng.gauss(0.0, 0.05), 4) for b in base]
  relevance = [round(rng.uniform(0.2, 1.0), 3) for _ in range(n_tokens)]
  return {"text": text, "token_logprobs": logprobs, "cluster_id": cluster,
          "embedding": embedding, "token_relevance": relevance}


def sim_matrix(samples):
  n = len(samples)
  return [[1.0 if i == j else (0.9 if samples[i]["cluster_id"] == samples[j]["cluster_id"]
                               else 0.2) for j in range(n)] for i in range(n)]


def qa_record(rng, rid, dataset, q, ref, wrong, correct, ood):
  confident = correct and rng.random() < 0.8
  answer = ref if correct else wrong
  samples = []
  for k in range(5):
    if confident or rng.random() < 0.4:
      samples.append(sample(rng, answer, 0, confident))
    else:
      alt = wrong if correct else ref
      samples.append(sample(rng, alt if k % 2 else answer + " maybe", 1 + k % 2, False))
  answer_lp = [round(-abs(rng.gauss(0.0, 0.1 if confident else 0.9)) - 0.01, 4)
               for _ in answer.split()]
  if ood:
    answer_lp = [lp - 0.4 for lp in answer_lp]
  return {
      "id": rid, "dataset": dataset, "model": "toy-lm", "question": q,
      "references": [ref], "answer": {"text": answer, "token_logprobs": answer_lp},
      "samples": samples, "sentence_sim": sim_matrix(samples),
      "p_true_logprob": round(math.log(0.9 if confident else rng.uniform(0.2, 0.7)), 4),
      "ood_label": int(ood), "exact_correct": int(correct), "sampling_temperature": 1.0,
  }


def perturb_record(rng, base, story, strength):
  answer = story.split()[1]
  samples = []
  for k in range(4):
    noisy = rng.random() < strength
    samples.append(sample(rng, answer if not noisy else story.split()[k + 2], 0 if not noisy else k + 1,
                          not noisy))
  return {
      "id": f"{base}#p={strength:g}", "dataset": "stories", "model": "toy-lm",
      "question": "Who is the story about?", "context": story, "references": [answer],
      "answer": {"text": answer,
                 "token_logprobs": [round(-0.05 - strength * rng.uniform(0.5, 1.5), 4)]},
      "samples": samples, "sentence_sim": sim_matrix(samples),
      "perturbation_strength": strength, "sampling_temperature": 1.0,
  }


def judge_votes(rng, correct):
  votes = []
  for judge in range(3):
    for _ in range(2):
      r = rng.random()
      if r < 0.05:
        votes.append("null")
      else:
        agree = r < 0.88 - 0.08 * judge
        votes.append(str(int(correct if agree else 1 - correct)))
  return votes


def main():
  out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data")
  os.makedirs(out, exist_ok=True)
  rng = random.Random(20261015)
  qa, judge_rows = [], []
  for d, dataset in enumerate(["trivia", "squad"]):
    for i, (q, ref, wrong) in enumerate(QA):
      correct = int(rng.random() < 0.6)
      ood = int(d == 1 and i % 3 == 0)
      rec = qa_record(rng, f"{dataset}-{i:02d}", dataset, q, ref, wrong, correct, ood)
      qa.append(rec)
      judge_rows.append([rec["id"]] + judge_votes(rng, correct))
  with open(os.path.join(out, "qa_records.jsonl"), "w") as f:
    for r in qa:
      f.write(json.dumps(r) + "\n")
  with open(os.path.join(out, "perturb_records.jsonl"), "w") as f:
    for s, story in enumerate(STORIES):
      for strength in STRENGTHS:
        f.write(json.dumps(perturb_record(rng, f"story{s}", story, strength)) + "\n")
  header = ["record_id"] + [f"judge.{j}.s{k}" for j in ("gpt", "llama", "mistral") for k in (0, 1)]
  with open(os.path.join(out, "judge_verdicts.csv"), "w") as f:
    f.write(",".join(header) + "\n")
    for row in judge_rows:
      f.write(",".join(row) + "\n")
  judges = {"judges": [
      {"judge_id": j, "model_name": m, "prompt_template": t, "temperature": temp,
       "endpoint_url": "http://127.0.0.1:8080/v1/completions", "num_samples": 2,
       "max_retries": 3, "parallelism_limit": 4}
      for j, m, t, temp in (("gpt", "judge-a", "qa", 0.5), ("llama", "judge-b", "qa", 0.5),
                            ("mistral", "judge-c", "gen", 0.7))]}
  with open(os.path.join(out, "judges.json"), "w") as f:
    json.dump(judges, f, indent=2)
    f.write("\n")


if __name__ == "__main__":
  main()
