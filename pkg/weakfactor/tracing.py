"""Optional OpenTelemetry tracing for experiments and studies."""

import logging
from contextlib import contextmanager
from typing import Any, Iterator

# Global tracer instance
_tracer: Any | None = None
_tracing_available = False

# Try to import tracing dependencies
try:
    from opentelemetry import trace
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor

    _tracing_available = True
except ImportError:
    trace = None
    TracerProvider = None
    ConsoleSpanExporter = None
    SimpleSpanProcessor = None

logger = logging.getLogger(__name__)


def init_tracing(exporter: str = "none", service_name: str = "weakfactor") -> Any:
    """Initialize OpenTelemetry tracing.

    Args:
        exporter: "console" prints finished spans to stdout; "none" disables tracing.
        service_name: Name of the service for tracing.

    Returns:
        Configured tracer instance or None if tracing is disabled or not installed.
    """
    global _tracer

    if _tracer is not None:
        return _tracer

    if exporter == "none":
        return None

    if not _tracing_available:
        logger.info("Tracing not available - opentelemetry not installed")
        return None

    provider = TracerProvider()
    if exporter == "console":
        provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter()))
    trace.set_tracer_provider(provider)
    _tracer = trace.get_tracer(service_name)
    logger.info(f"Tracing initialized for {service_name} ({exporter} exporter)")
    return _tracer


def reset_tracing() -> None:
    """Forget the global tracer; later spans are no-ops until init_tracing runs again."""
    global _tracer
    _tracer = None


@contextmanager
def trace_run(name: str, attributes: dict[str, Any] | None = None) -> Iterator[Any]:
    """Context manager wrapping an experiment, sweep point or study in a span.

    Args:
        name: Span name, e.g. "experiment" or "table_cell".
        attributes: Scalar attributes recorded on the span.

    Yields:
        The span, or None when tracing is off.
    """
    if _tracer is None:
        yield None
        return

    with _tracer.start_as_current_span(
        name,
        attributes={
            f"weakfactor.{k}": v for k, v in (attributes or {}).items() if v is not None
        },
    ) as span:
        try:
            yield span
            span.set_attribute("weakfactor.status", "success")
        except Exception as e:
            span.set_attribute("weakfactor.status", "error")
            span.set_attribute("weakfactor.error", str(e))
            span.record_exception(e)
            raise
