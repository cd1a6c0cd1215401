from typing import Tuple
import logging

from app.core.exceptions import ConstructionError, InputError
from app.models.schemas import AutomatonDescriptor, TranslationReport
from app.services.automaton_service import is_deterministic, validate_automaton
from app.services.transformer_service import TwoWayTransformer
from app.services.translation_service import classical_to_pebble, pebble_to_classical

logger = logging.getLogger(__name__)


def _apply(f: TwoWayTransformer, classical: AutomatonDescriptor) -> Tuple[AutomatonDescriptor, TranslationReport]:
    result = f(classical)
    if result.is_pebble:
        raise ConstructionError(f"Transformer {f.name!r} returned a pebble automaton")
    violations = validate_automaton(result)
    if violations:
        logger.error(f"Transformer {f.name!r} returned an invalid automaton: {violations[0].message}")
        raise ConstructionError(f"Transformer {f.name!r} returned an invalid automaton: {violations[0].message}")
    stage = TranslationReport(
        construction=f.name,
        input_states=len(classical.states),
        output_states=len(result.states),
        bound=f.state_bound(len(classical.states)),
        determinism_in=is_deterministic(classical),
        determinism_out=is_deterministic(result),
        transformer=f.name,
    )
    return result, stage


def _lift(
    construction: str, M: AutomatonDescriptor, f: TwoWayTransformer, deterministic: bool
) -> Tuple[AutomatonDescriptor, TranslationReport]:
    if f.kind != ("determinizer" if construction == "lift_determinization" else "complementer"):
        raise InputError(f"{construction} cannot use the {f.kind} {f.name!r}")
    classical, first = pebble_to_classical(M)
    transformed, middle = _apply(f, classical)
    if deterministic:
        if not is_deterministic(transformed):
            logger.error(f"Transformer {f.name!r} returned a nondeterministic automaton")
            raise ConstructionError(f"Transformer {f.name!r} returned a nondeterministic automaton")
        transformed = transformed.model_copy(update={"kind": "2dfa"})
    result, last = classical_to_pebble(transformed)

    m = len(M.states)
    report = TranslationReport(
        construction=construction,
        input_states=m,
        output_states=len(result.states),
        bound=5 * f.state_bound(3 * m),
        determinism_in=is_deterministic(M),
        determinism_out=is_deterministic(result),
        transformer=f.name,
        stages=[first, middle, last],
    )
    logger.info(f"{construction} with {f.name}: {m} -> {report.output_states} states")
    return result, report


def lift_determinization(M: AutomatonDescriptor, f: TwoWayTransformer) -> Tuple[AutomatonDescriptor, TranslationReport]:
    """Deterministic pebble automaton for L(M): classical_to_pebble(f(pebble_to_classical(M)))."""
    return _lift("lift_determinization", M, f, deterministic=True)


def lift_complement(M: AutomatonDescriptor, f: TwoWayTransformer) -> Tuple[AutomatonDescriptor, TranslationReport]:
    """Pebble automaton for the complement of L(M), same pipeline with a complementer."""
    return _lift("lift_complement", M, f, deterministic=False)


def complement_pebble_dfa(M: AutomatonDescriptor, comp2dfa: TwoWayTransformer) -> Tuple[AutomatonDescriptor, TranslationReport]:
    """
    Deterministic complement of a deterministic pebble automaton. The target
    bound is 60m; it is conditional unless 5·f(3m) <= 60m for the declared f.
    """
    if not M.is_pebble or not is_deterministic(M):
        raise InputError("complement_pebble_dfa expects a deterministic pebble automaton")
    result, report = _lift("lift_complement", M, comp2dfa, deterministic=False)
    if not is_deterministic(result):
        logger.error(f"Complementer {comp2dfa.name!r} lost determinism")
        raise ConstructionError(f"Complementer {comp2dfa.name!r} returned a nondeterministic automaton")

    m = len(M.states)
    result = result.model_copy(update={"kind": "pebble-2dfa"})
    return result, report.model_copy(
        update={
            "construction": "complement_pebble_dfa",
            "bound": 60 * m,
            "bound_conditional": 5 * comp2dfa.state_bound(3 * m) > 60 * m,
        }
    )
