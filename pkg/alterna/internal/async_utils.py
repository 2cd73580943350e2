from __future__ import annotations

import asyncio
import contextlib
import functools
import typing

if typing.TYPE_CHECKING:
    import concurrent.futures

__all__: typing.Sequence[str] = (
    "cancel_futures",
    "run_blocking",
    "gather_blocking",
)


_T = typing.TypeVar("_T")


async def cancel_futures(futures: typing.Iterable[asyncio.Future[typing.Any]]) -> None:
    for future in futures:
        if not future.done() and not future.cancelled():
            future.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await future


async def run_blocking(
    executor: concurrent.futures.Executor | None,
    func: typing.Callable[..., _T],
    /,
    *args: typing.Any,
    **kwargs: typing.Any,
) -> _T:
    """Run a blocking (numerical) call in ``executor`` without blocking the event loop."""
    loop = asyncio.get_running_loop()
    return await loop.run_in_executor(executor, functools.partial(func, *args, **kwargs))


async def gather_blocking(
    executor: concurrent.futures.Executor | None,
    calls: typing.Sequence[typing.Callable[[], _T]],
) -> list[_T]:
    """Run zero-argument blocking calls concurrently, returning results in submission order.

    If any call raises, every call that has not finished yet is cancelled and the first
    exception is re-raised.
    """
    loop = asyncio.get_running_loop()
    futures = [loop.run_in_executor(executor, call) for call in calls]

    try:
        return list(await asyncio.gather(*futures))

    except BaseException:
        await cancel_futures(futures)
        raise
