package org.stickers;

import android.graphics.Bitmap;
import android.graphics.BitmapFactory;

public class StickerGridAdapter {
  private AssetManager manager;
  private String fileName;
  private ImageView view;

  public Bitmap decodeSticker() throws IOException {
    final BitmapFactory.Options options = new BitmapFactory.Options();
    options.inSampleSize = 2;
    InputStream input = manager.open(fileName);
    Bitmap image = BitmapFactory.decodeStream(input, null, options);
    return image;
  }

  public void showSticker() throws IOException {
    final BitmapFactory.Options options = new BitmapFactory.Options();
    options.inSampleSize = 2;
    InputStream input = manager.open(fileName);
    Bitmap image = BitmapFactory.decodeStream(input, null, options);
    view.setImageBitmap(image);
  }

  public Bitmap decodeThumbnail() throws IOException {
    final BitmapFactory.Options options = new BitmapFactory.Options();
    options.inSampleSize = 4;
    options.inPreferredConfig = Bitmap.Config.RGB_565;
    InputStream input = manager.open(fileName);
    Bitmap image = BitmapFactory.decodeStream(input, null, options);
    return image;
  }
}
