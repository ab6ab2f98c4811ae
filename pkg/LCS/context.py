"""
A ``Context`` issues the random streams of one run.

"""
import uuid
import logging

from LCS.errors import ConfigurationError
from LCS.sampler import SeededStream

__all__ = (
    'Context',
)

log = logging.getLogger(__name__)

#----------------------------------------------------------------------------
class Context(object):

    """
    Issues :class:`~sampler.SeededStream` objects for a run

    :arg seed: the master seed. When omitted, a seed is derived from
        a UUID4 and can be recovered from :attr:`seed` to reproduce the run.

    Streams are numbered consecutively, so a run that asks for its
    streams in the same order gets the same draws.

    **Example**::

        >>> c = Context(seed=7)
        >>> c.next_stream()
        SeededStream(seed=7, index=0, counter=0, path=())
        >>> c.next_stream().index
        1

    """

    def __init__(self,seed=None):
        if seed is None:
            seed = uuid.uuid4().int & (2**64 - 1)
            log.info("no seed given, using %d",seed)
        elif isinstance(seed,bool) or not isinstance(seed,int) or not (0 <= seed < 2**64):
            raise ConfigurationError(
                "seed must be an integer in [0, 2**64), got {!r}".format(seed)
            )
        self._seed = seed
        self._stream_counter = 0

    def __repr__(self):
        return "Context(seed={!r})".format(self._seed)

    @property
    def seed(self):
        return self._seed

    @property
    def streams_issued(self):
        return self._stream_counter

    #------------------------------------------------------------------------
    def next_stream(self):
        """Return a stream that no other call on this context returns"""
        s = SeededStream(self._seed,self._stream_counter)
        self._stream_counter += 1
        return s

    def stream(self,index):
        """Return stream ``index`` without advancing the counter"""
        return SeededStream(self._seed,index)
