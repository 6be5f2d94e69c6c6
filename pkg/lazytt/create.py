""" Writing strips and cube complexes to HDF5 archives """
import logging as _logging

import h5py as _h5py
import numpy as _np

from .alter import write_attr_dict as _write_attr_dict
from .canonical import canonical_label as _canonical_label
from .config import DefaultConfig
from .inspect import valid_dsets as _valid_dsets
from .utils import FidOrFile as _FidOrFile, fullpath as _fullpath

__all__ = ['save', 'save_strip', 'save_complex']

logger = _logging.getLogger(__name__)


def _open(file, pth, mode):
    if isinstance(file, str):
        return _FidOrFile(_fullpath(file, pth), mode=mode)
    elif isinstance(file, _h5py.File):
        return _FidOrFile(file, mode=mode)
    raise TypeError('file needs to be a str or h5py.File object.')


def save(file, dset, data, pth=None, attr_dict=None, mode='a',
         dset_overwrite=False, sort_attrs=False, compression=None):
    """
    Save one dataset.

    Parameters
    ----------
    file : str or h5py.File
        Filename or File-object for an open archive

    dset : str
        Dataset name (including groups if any)

    data : ndarray

    pth : str
        Path to file

    attr_dict : dict
        Attributes written after the data

    mode : str
        h5py file mode

    dset_overwrite : bool
        Replace an existing dataset instead of raising

    compression : str
        Dataset filter; default from DefaultConfig().hdf_compression. Empty
        datasets are never filtered.

    Returns
    -------
    bool : Saved with no errors
    """
    fof = _open(file, pth, mode)
    fid = fof.fid
    if compression is None:
        compression = DefaultConfig().hdf_compression

    if _valid_dsets(fid, dset, verbose=False):
        if not dset_overwrite:
            fof.close_if_file_not_fid()
            err_str1 = 'Dataset {} exists. '.format(dset)
            err_str2 = 'Param dset_overwrite=False. Will not overwrite'
            raise IOError(err_str1 + err_str2)
        del fid[dset]

    data = _np.asarray(data)
    filt = compression if data.size else None
    dset_id = fid.create_dataset(dset, data=data, compression=filt)
    if attr_dict:
        _write_attr_dict(dset_id, attr_dict, sort_attrs=sort_attrs)
    logger.debug('saved %s %s', dset, data.shape)

    fof.close_if_file_not_fid()
    return True


def save_strip(file, group, strip, surface=None, pth=None, mode='a', dset_overwrite=False):
    """
    Write a flat strip as ``<group>/phi``, ``<group>/edges`` and
    ``<group>/branches``.

    The phi dataset carries the attributes surface, radius, truncated and
    canonical (canonical form of the base track).
    """
    attrs = {'surface': str(surface) if surface is not None else '',
             'radius': -1 if strip.radius is None else int(strip.radius),
             'truncated': bool(strip.truncated),
             'canonical': _canonical_label(strip.base).decode('ascii'),
             'vertices': len(strip)}
    fof = _open(file, pth, mode)
    fid = fof.fid
    group = group.rstrip('/')
    save(fid, group + '/phi', strip.phi_matrix, attr_dict=attrs, dset_overwrite=dset_overwrite)
    save(fid, group + '/edges', strip.edge_array, dset_overwrite=dset_overwrite)
    save(fid, group + '/branches', _np.array(strip.branches, dtype=_np.int64),
         dset_overwrite=dset_overwrite)
    fof.close_if_file_not_fid()
    return True


def save_complex(file, group, cplx, attr_dict=None, pth=None, mode='a', dset_overwrite=False):
    """
    Write a cube complex: ``<group>/vertices`` (n, q) and one table
    ``<group>/cubes_<dim>`` per dimension with rows (base vertex id, dirs...).
    """
    fof = _open(file, pth, mode)
    fid = fof.fid
    group = group.rstrip('/')
    verts = _np.array(cplx.vertices, dtype=_np.int64)
    if cplx.vertices:
        verts = verts.reshape(len(cplx.vertices), len(cplx.vertices[0]))
    attrs = {'dimension': cplx.dimension}
    if attr_dict:
        attrs.update(attr_dict)
    save(fid, group + '/vertices', verts, attr_dict=attrs, dset_overwrite=dset_overwrite)
    index = {phi: vid for vid, phi in enumerate(cplx.vertices)}
    for dim, cubes in cplx.cubes.items():
        rows = [(index[base],) + tuple(dirs) for base, dirs in cubes]
        table = _np.array(rows, dtype=_np.int64).reshape(len(rows), dim + 1)
        save(fid, '{}/cubes_{}'.format(group, dim), table, dset_overwrite=dset_overwrite)
    fof.close_if_file_not_fid()
    return True
