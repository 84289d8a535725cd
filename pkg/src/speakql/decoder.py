"""Word-level phoneme HMMs composed with a grammar automaton, decoded by
exact Viterbi search over symbolic phoneme observations.

All scoring is done in the natural-log domain. Ties are broken by the
lexicographically smallest word sequence, then the smallest state path,
so decoding is fully deterministic and comparable against exhaustive
enumeration oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import yaml

from .errors import DecodeError, ModelConfigError

_SUM_TOL = 1e-9

NEG_INF = float("-inf")


@dataclass(frozen=True)
class PhonemeState:
    phoneme: str
    emissions: dict  # observation symbol -> probability


@dataclass(frozen=True)
class WordHmm:
    word: str
    states: tuple[PhonemeState, ...]
    transitions: dict  # state index -> tuple of (state index, probability)
    entry: tuple  # (state index, probability) pairs
    exit: dict  # state index -> probability

    def emission_logp(self, state_idx, symbol):
        p = self.states[state_idx].emissions.get(symbol, 0.0)
        return math.log(p) if p > 0.0 else NEG_INF


@dataclass(frozen=True)
class GrammarFsa:
    states: frozenset
    start: str
    accepting: frozenset
    arcs: tuple  # (from state, word, to state)


@dataclass(frozen=True)
class Decoding:
    words: tuple[str, ...]
    log_probability: float
    state_path: tuple  # (word, state index) pairs


def _check_prob(p, where):
    if not isinstance(p, (int, float)) or isinstance(p, bool) or not 0.0 <= p <= 1.0:
        raise ModelConfigError(f"probability out of range at {where}: {p!r}")
    return float(p)


def load_models(model_text):
    """Parse and validate a model-config document (YAML)."""
    try:
        doc = yaml.safe_load(model_text)
    except yaml.YAMLError as exc:
        raise ModelConfigError(f"model config parse error: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelConfigError("model config must be a mapping")
    alphabet = doc.get("phoneme_alphabet")
    if not isinstance(alphabet, list) or not all(isinstance(s, str) for s in alphabet):
        raise ModelConfigError("'phoneme_alphabet' must be a list of symbols")
    alphabet = set(alphabet)

    hmms = []
    for raw in doc.get("words") or []:
        hmms.append(_load_word(raw, alphabet))
    if not hmms:
        raise ModelConfigError("'words' must declare at least one word model")

    raw_fsa = doc.get("grammar")
    if not isinstance(raw_fsa, dict):
        raise ModelConfigError("'grammar' section missing")
    states = frozenset(raw_fsa.get("states") or [])
    start = raw_fsa.get("start")
    accepting = frozenset(raw_fsa.get("accepting") or [])
    if start not in states or not accepting <= states:
        raise ModelConfigError("grammar start/accepting states must be members of 'states'")
    known_words = {h.word for h in hmms}
    arcs = []
    for arc in raw_fsa.get("arcs") or []:
        src, word, dst = arc.get("from"), arc.get("word"), arc.get("to")
        if src not in states or dst not in states:
            raise ModelConfigError(f"arc references unknown grammar state: {arc!r}")
        if word not in known_words:
            raise ModelConfigError(f"arc references unknown word {word!r}")
        arcs.append((src, word, dst))
    fsa = GrammarFsa(states, start, accepting, tuple(arcs))
    return hmms, fsa


def _load_word(raw, alphabet):
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise ModelConfigError(f"word model needs a 'name': {raw!r}")
    raw_states = raw.get("states")
    if not isinstance(raw_states, list) or not raw_states:
        raise ModelConfigError(f"word {name!r}: 'states' must be a nonempty list")

    states = []
    for i, rs in enumerate(raw_states):
        emissions = {}
        total = 0.0
        for sym, p in (rs.get("emissions") or {}).items():
            if sym not in alphabet:
                raise ModelConfigError(
                    f"word {name!r} state {i}: emission symbol {sym!r} not in alphabet"
                )
            emissions[sym] = _check_prob(p, f"word {name!r} state {i} emission {sym!r}")
            total += emissions[sym]
        if abs(total - 1.0) > _SUM_TOL:
            raise ModelConfigError(
                f"word {name!r} state {i}: emission probabilities sum to {total}"
            )
        states.append(PhonemeState(rs.get("phoneme", ""), emissions))

    n = len(states)

    entry = []
    total = 0.0
    for idx, p in (raw.get("entry") or {}).items():
        idx = _state_index(idx, n, name, "entry")
        p = _check_prob(p, f"word {name!r} entry state {idx}")
        entry.append((idx, p))
        total += p
    if abs(total - 1.0) > _SUM_TOL:
        raise ModelConfigError(f"word {name!r}: entry probabilities sum to {total}")

    exit_probs = {}
    for idx, p in (raw.get("exit") or {}).items():
        idx = _state_index(idx, n, name, "exit")
        exit_probs[idx] = _check_prob(p, f"word {name!r} exit state {idx}")

    transitions = {}
    for src, row in (raw.get("transitions") or {}).items():
        src = _state_index(src, n, name, "transitions")
        out = []
        for dst, p in (row or {}).items():
            dst = _state_index(dst, n, name, f"transitions from {src}")
            if dst < src:
                raise ModelConfigError(
                    f"word {name!r}: transition {src}->{dst} decreases the state index"
                )
            out.append((dst, _check_prob(p, f"word {name!r} transition {src}->{dst}")))
        transitions[src] = tuple(out)
    for src in range(n):
        total = sum(p for _, p in transitions.get(src, ())) + exit_probs.get(src, 0.0)
        if abs(total - 1.0) > _SUM_TOL:
            raise ModelConfigError(
                f"word {name!r} state {src}: outgoing + exit mass sums to {total}"
            )

    return WordHmm(name, tuple(states), transitions, tuple(entry), exit_probs)


def _state_index(value, n, word, where):
    try:
        idx = int(value)
    except (TypeError, ValueError):
        raise ModelConfigError(f"word {word!r} {where}: bad state index {value!r}")
    if not 0 <= idx < n:
        raise ModelConfigError(f"word {word!r} {where}: state index {idx} out of range")
    return idx


def _logp(p):
    return math.log(p) if p > 0.0 else NEG_INF


def viterbi_word(observations, hmm):
    """Best entry->...->exit state path emitting the observations.

    Returns (log probability, state index path); (-inf, ()) when no path
    has positive probability. Ties pick the smallest state path.
    """
    if not observations:
        raise ValueError("observations must be nonempty")
    # cell value: (logp, path tuple); maximize logp, then minimize path
    cells = {}
    for idx, p in hmm.entry:
        score = _logp(p) + hmm.emission_logp(idx, observations[0])
        if score > NEG_INF:
            _keep(cells, idx, score, (idx,))
    for symbol in observations[1:]:
        nxt = {}
        for src, (score, path) in cells.items():
            for dst, p in hmm.transitions.get(src, ()):
                step = score + _logp(p) + hmm.emission_logp(dst, symbol)
                if step > NEG_INF:
                    _keep(nxt, dst, step, path + (dst,))
        cells = nxt
    best_score, best_path = NEG_INF, ()
    for idx, (score, path) in cells.items():
        total = score + _logp(hmm.exit.get(idx, 0.0))
        if total > best_score or (total == best_score and path < best_path):
            best_score, best_path = total, path
    if best_score == NEG_INF:
        return NEG_INF, ()
    return best_score, best_path


def _keep(cells, key, score, path):
    old = cells.get(key)
    if old is None or score > old[0] or (score == old[0] and path < old[1]):
        cells[key] = (score, path)


def decode_sentence(observations, hmms, fsa):
    """Joint best segmentation + grammar path + per-word state paths.

    Exact dynamic program over (observation position, grammar state); the
    grammar is unweighted so only acoustic likelihoods rank decodings.
    """
    if not observations:
        raise ValueError("observations must be nonempty")
    by_name = {h.word: h for h in hmms}
    n = len(observations)

    # word scores per span, computed lazily
    span_cache = {}

    def span_score(word, i, j):
        key = (word, i, j)
        if key not in span_cache:
            span_cache[key] = viterbi_word(observations[i:j], by_name[word])
        return span_cache[key]

    # best[(pos, fsa state)] = (logp, words, state_path); maximize logp,
    # tie-break smallest words then smallest state path
    best = {(0, fsa.start): (0.0, (), ())}
    for i in range(n):
        for (pos, state), (score, words, spath) in list(best.items()):
            if pos != i:
                continue
            for src, word, dst in fsa.arcs:
                if src != state:
                    continue
                for j in range(i + 1, n + 1):
                    wscore, wpath = span_score(word, i, j)
                    if wscore == NEG_INF:
                        continue
                    cand = (
                        score + wscore,
                        words + (word,),
                        spath + tuple((word, s) for s in wpath),
                    )
                    _keep_sentence(best, (j, dst), cand)

    winner = None
    for state in fsa.accepting:
        cand = best.get((n, state))
        if cand is None:
            continue
        if winner is None or _sentence_key(cand) < _sentence_key(winner):
            winner = cand
    if winner is None:
        raise DecodeError("no accepting decoding with positive probability")
    score, words, spath = winner
    return Decoding(words, score, spath)


def _sentence_key(cand):
    return (-cand[0], cand[1], cand[2])


def _keep_sentence(best, key, cand):
    old = best.get(key)
    if old is None or _sentence_key(cand) < _sentence_key(old):
        best[key] = cand
