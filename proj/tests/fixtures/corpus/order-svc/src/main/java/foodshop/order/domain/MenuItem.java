package foodshop.order.domain;

import java.util.UUID;

public class MenuItem {
    private UUID id;
    private String title;
    private double cost;

    public String getTitle() {
        return title;
    }

    public void setTitle(String title) {
        this.title = title;
    }
}
